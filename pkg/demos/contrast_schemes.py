"""Treatment, effect, and weighted effect coding side by side.

All three schemes span the same column space, so the fitted values
agree to machine precision. What changes is what the intercept means:
reference-group mean, unweighted mean of group means, or grand mean.
"""

import numpy as np

from dummyreg import (
    Cell,
    CellMeanSpec,
    build_design,
    cell_means,
    fit,
    parse_formula,
    synthesize,
)

SPEC = CellMeanSpec(
    {"edu": ("low", "middle", "high")},
    # deliberately unbalanced so the two mean flavors differ
    {("low",): Cell(26.12, 8), ("middle",): Cell(24.94, 40),
     ("high",): Cell(24.29, 12)},
    response="bmi",
)


def main() -> None:
    data = synthesize(SPEC, spread=0.9)
    ast = parse_formula("bmi ~ edu")

    fits = {s: fit(build_design(ast, data, default_scheme=s))
            for s in ("treatment", "effect", "weighted")}

    means = cell_means(data, ["edu"], "bmi")
    unweighted = sum(means.values()) / len(means)
    grand = float(data["bmi"].values.mean())

    print(f"group means:             {[round(m, 2) for m in means.values()]}")
    print(f"unweighted mean of means: {unweighted:.4f}")
    print(f"grand mean:               {grand:.4f}")
    print()
    for scheme, result in fits.items():
        print(f"{scheme:>9} intercept: {result.coefficients[0]:.4f}")

    base = fits["treatment"].fitted
    drift = max(float(np.max(np.abs(f.fitted - base))) for f in fits.values())
    print(f"\nmax fitted-value drift across schemes: {drift:.2e}")


if __name__ == "__main__":
    main()
