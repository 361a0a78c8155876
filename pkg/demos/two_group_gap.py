"""Two-group comparison as a regression.

With a single 0/1 predictor the intercept is the reference-group mean
and the slope is the gap between groups. Data are synthesized so the
cell means are exact, which makes the algebra easy to eyeball.
"""

from dummyreg import (
    Cell,
    CellMeanSpec,
    build_design,
    design_references,
    fit,
    parse_formula,
    render_text,
    synthesize,
)


def main() -> None:
    spec = CellMeanSpec(
        {"female": ("0", "1")},
        {("0",): Cell(25.23, 40), ("1",): Cell(24.72, 40)},
        response="bmi",
    )
    data = synthesize(spec, spread=1.2)
    design = build_design(parse_formula("bmi ~ female"), data)
    result = fit(design)

    print(render_text(result, refs=design_references(design)))
    b0, b1 = result.coefficients
    print(f"reference-group mean: {b0:.2f}")
    print(f"group gap:            {b1:+.2f}")
    print(f"other group mean:     {b0 + b1:.2f}")


if __name__ == "__main__":
    main()
