"""Design-matrix construction: contrast coding, transforms, interactions.

A parsed formula plus a dataset become a labeled numeric matrix. Each
categorical variable contributes k-1 contrast columns per the scheme in
force; numeric variables pass through transforms; interaction terms are
elementwise products of their constituents' column blocks.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Union

import numpy as np

from .dataset import CategoricalColumn, Dataset, NumericColumn
from .errors import (
    EncodingConflict,
    IncompleteProfile,
    InterceptRequired,
    MissingValuesPresent,
    NonPositiveLog,
    NotCategorical,
    ResponseNotNumeric,
    SingleLevel,
    UnknownLevel,
    UnknownVariable,
    ZeroCountLevel,
)
from .formula import SCHEMES, FormulaAst, Term, VarRef, format_ref, format_term

DEFAULT_SCHEME = "treatment"


@dataclass(frozen=True)
class ContrastScheme:
    kind: str  # "treatment" | "effect" | "weighted"
    omitted_level: str

    def __post_init__(self):
        if self.kind not in SCHEMES:
            raise ValueError(f"unknown contrast scheme {self.kind!r}")


@dataclass(frozen=True)
class ColumnLabel:
    """Ties a design column back to its term, variables, and levels."""

    text: str
    term: str
    variables: tuple[str, ...] = ()
    details: tuple[str, ...] = ()
    interaction: bool = False

    def __str__(self) -> str:
        return self.text


INTERCEPT_LABEL = ColumnLabel("(intercept)", "(intercept)")


@dataclass(frozen=True)
class CategoricalInfo:
    """How one categorical variable was encoded in a given design."""

    name: str
    scheme: ContrastScheme
    levels: tuple[str, ...]
    counts: tuple[int, ...]
    from_numeric: bool = False

    @property
    def kept(self) -> tuple[str, ...]:
        return tuple(lv for lv in self.levels if lv != self.scheme.omitted_level)


@dataclass(frozen=True)
class DesignInfo:
    """Everything needed to re-encode new rows against an existing fit."""

    formula: FormulaAst
    default_scheme: str
    categoricals: dict[str, CategoricalInfo] = field(default_factory=dict)


@dataclass(frozen=True)
class DesignMatrix:
    values: np.ndarray  # n x p, float64
    labels: tuple[ColumnLabel, ...]
    response: np.ndarray  # n floats
    response_name: str = "y"
    info: DesignInfo | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        response = np.asarray(self.response, dtype=np.float64)
        values.flags.writeable = False
        response.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "response", response)
        if values.ndim != 2 or values.shape[1] != len(self.labels):
            raise ValueError("values shape does not match label count")
        if response.shape != (values.shape[0],):
            raise ValueError("response length does not match row count")

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_cols(self) -> int:
        return self.values.shape[1]


def simple_labels(texts: Iterable[str]) -> tuple[ColumnLabel, ...]:
    """Bare labels for hand-assembled matrices (tests, experiments)."""
    return tuple(ColumnLabel(t, t, (t,), (t,)) for t in texts)


def _numeric_level_name(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def _contrast_matrix(info: CategoricalInfo) -> np.ndarray:
    """Per-level contrast rows, shape (k, k-1); row i encodes level i."""
    levels, counts, scheme = info.levels, info.counts, info.scheme
    if len(levels) < 2:
        raise SingleLevel(info.name)
    if scheme.omitted_level not in levels:
        raise UnknownLevel(info.name, scheme.omitted_level)
    for level, count in zip(levels, counts):
        if count == 0:
            if scheme.kind == "weighted":
                raise ZeroCountLevel(level, scheme.kind)
            warnings.warn(
                f"level {level!r} of {info.name!r} has no observations",
                stacklevel=3,
            )
    omit = levels.index(scheme.omitted_level)
    kept = [i for i in range(len(levels)) if i != omit]
    matrix = np.zeros((len(levels), len(kept)))
    for j, i in enumerate(kept):
        matrix[i, j] = 1.0
    if scheme.kind == "effect":
        matrix[omit, :] = -1.0
    elif scheme.kind == "weighted":
        matrix[omit, :] = [-counts[i] / counts[omit] for i in kept]
    return matrix


def encode_categorical(
    column: CategoricalColumn, scheme: ContrastScheme, name: str = "column"
) -> tuple[np.ndarray, tuple[str, ...]]:
    """Contrast-code one categorical column.

    Returns the n x (k-1) matrix plus the kept (non-omitted) levels in
    column order. Zero-count levels are an error under weighted coding
    and a warning otherwise.
    """
    if column.missing.any():
        raise MissingValuesPresent([name])
    info = CategoricalInfo(
        name, scheme, column.levels, tuple(int(c) for c in column.counts)
    )
    return _contrast_matrix(info)[column.codes], info.kept


def apply_transform(values: np.ndarray, ref: VarRef) -> np.ndarray:
    """Apply a factor's transform chain (log, then centering) to values."""
    out = np.asarray(values, dtype=np.float64)
    if ref.log:
        bad = out <= 0
        if bad.any():
            raise NonPositiveLog(int(np.argmax(bad)))
        out = np.log(out)
    if ref.center is not None:
        out = out - ref.center.value
    return out


def _is_dummy_passthrough(ref: VarRef, values: np.ndarray) -> bool:
    if ref.log or ref.center is not None:
        return False
    observed = values[~np.isnan(values)]
    return bool(np.isin(observed, (0.0, 1.0)).all())


def _numeric_as_categorical(name: str, values: np.ndarray) -> CategoricalColumn:
    distinct = np.unique(values)
    levels = tuple(_numeric_level_name(v) for v in distinct)
    codes = np.searchsorted(distinct, values)
    return CategoricalColumn(levels, codes)


def _resolve_categoricals(
    ast: FormulaAst,
    data: Dataset,
    default_scheme: str,
    refs: Mapping[str, str],
) -> dict[str, CategoricalInfo]:
    by_var: dict[str, list[VarRef]] = {}
    for term in ast.terms:
        for ref in term.factors:
            by_var.setdefault(ref.name, []).append(ref)

    out: dict[str, CategoricalInfo] = {}
    for name, occurrences in by_var.items():
        column = data[name]
        wants_cat = any(r.categorical for r in occurrences)
        is_cat = wants_cat or isinstance(column, CategoricalColumn)
        if not is_cat:
            continue
        if any(r.log or r.center is not None for r in occurrences):
            raise EncodingConflict(name, "cannot transform a categorical variable")

        ref_levels = {r.ref_level for r in occurrences if r.ref_level is not None}
        schemes = {r.scheme for r in occurrences if r.scheme is not None}
        if len(ref_levels) > 1:
            raise EncodingConflict(
                name, f"conflicting reference levels: {sorted(ref_levels)}"
            )
        if len(schemes) > 1:
            raise EncodingConflict(
                name, f"conflicting contrast schemes: {sorted(schemes)}"
            )

        if isinstance(column, CategoricalColumn):
            cat_col = column
            from_numeric = False
        else:
            cat_col = _numeric_as_categorical(name, column.values)
            from_numeric = True

        omitted = refs.get(name)
        if omitted is None and ref_levels:
            omitted = next(iter(ref_levels))
        if omitted is None:
            omitted = cat_col.levels[0]
        if omitted not in cat_col.levels:
            raise UnknownLevel(name, omitted)

        kind = next(iter(schemes)) if schemes else default_scheme
        out[name] = CategoricalInfo(
            name,
            ContrastScheme(kind, omitted),
            cat_col.levels,
            tuple(int(c) for c in cat_col.counts),
            from_numeric=from_numeric,
        )
    return out


def _term_signature(term: Term, categoricals: Mapping[str, CategoricalInfo]):
    parts = []
    for ref in term.factors:
        if ref.name in categoricals:
            parts.append(("cat", ref.name))
        else:
            center = None if ref.center is None else ref.center.value
            parts.append(("num", ref.name, ref.log, center))
    return tuple(parts)


def _factor_block(
    ref: VarRef,
    data: Dataset,
    categoricals: Mapping[str, CategoricalInfo],
    contrast_rows: Mapping[str, np.ndarray],
) -> tuple[np.ndarray, list[str], bool]:
    """Encode one factor: (n x m block, per-column labels, dummy-like?)."""
    if ref.name in categoricals:
        info = categoricals[ref.name]
        block = contrast_rows[ref.name]
        texts = [f"{ref.name}[{lv}]" for lv in info.kept]
        return block, texts, True
    column = data[ref.name]
    if not isinstance(column, NumericColumn):
        raise NotCategorical(ref.name)  # unreachable by construction
    values = apply_transform(column.values, ref)
    dummy = _is_dummy_passthrough(ref, column.values)
    return values[:, None], [format_ref(ref)], dummy


def build_design(
    ast: FormulaAst,
    data: Dataset,
    default_scheme: str = DEFAULT_SCHEME,
    refs: Mapping[str, str] | None = None,
) -> DesignMatrix:
    """Assemble the labeled design matrix for a formula over a dataset.

    Column order: intercept, main-effect terms in formula order, then
    interaction terms in formula order. Callers must remove missing
    values first (see dataset.listwise_delete).
    """
    if not ast.intercept:
        raise InterceptRequired()
    if default_scheme not in SCHEMES:
        raise ValueError(f"unknown contrast scheme {default_scheme!r}")
    refs = dict(refs or {})

    response_col = data[ast.response]
    if not isinstance(response_col, NumericColumn):
        raise ResponseNotNumeric(ast.response)
    used = [ast.response] + ast.variables()
    incomplete = [name for name in used if data[name].missing.any()]
    if incomplete:
        raise MissingValuesPresent(incomplete)
    for name in refs:
        if name not in data:
            raise UnknownVariable(name)

    categoricals = _resolve_categoricals(ast, data, default_scheme, refs)
    for name in refs:
        if name in ast.variables() and name not in categoricals:
            raise NotCategorical(name)

    contrast_rows: dict[str, np.ndarray] = {}
    for name, info in categoricals.items():
        matrix = _contrast_matrix(info)
        column = data[name]
        if isinstance(column, CategoricalColumn):
            codes = column.codes
        else:
            codes = _numeric_as_categorical(name, column.values).codes
        contrast_rows[name] = matrix[codes]

    n = data.n_rows
    columns: list[np.ndarray] = [np.ones(n)]
    labels: list[ColumnLabel] = [INTERCEPT_LABEL]
    seen = {_term_signature(Term(), categoricals)}

    mains = [t for t in ast.terms if t.kind == "main"]
    interactions = [t for t in ast.terms if t.kind == "interaction"]
    for term in mains + interactions:
        signature = _term_signature(term, categoricals)
        if signature in seen:
            continue
        seen.add(signature)

        cat_names = [r.name for r in term.factors if r.name in categoricals]
        if len(cat_names) != len(set(cat_names)):
            raise EncodingConflict(
                format_term(term), "a variable cannot interact with itself"
            )
        blocks = []
        texts = []
        continuous = 0
        for ref in term.factors:
            block, block_texts, dummy = _factor_block(
                ref, data, categoricals, contrast_rows
            )
            continuous += int(not dummy)
            blocks.append(block)
            texts.append(block_texts)
        if term.kind == "interaction" and continuous > 1:
            raise EncodingConflict(
                format_term(term),
                "interactions of two continuous variables are not supported",
            )

        term_text = format_term(term)
        variables = tuple(r.name for r in term.factors)
        for combo in product(*(range(b.shape[1]) for b in blocks)):
            col = np.ones(n)
            for block, j in zip(blocks, combo):
                col = col * block[:, j]
            details = tuple(texts[k][j] for k, j in enumerate(combo))
            labels.append(
                ColumnLabel(
                    "×".join(details),
                    term_text,
                    variables,
                    details,
                    interaction=term.kind == "interaction",
                )
            )
            columns.append(col)

    texts_seen: set[str] = set()
    for label in labels:
        if label.text in texts_seen:
            raise EncodingConflict(label.text, "duplicate design column label")
        texts_seen.add(label.text)

    info = DesignInfo(ast, default_scheme, categoricals)
    return DesignMatrix(
        np.column_stack(columns),
        tuple(labels),
        response_col.values,
        ast.response,
        info,
    )


def variable_levels(context, name: str) -> tuple[str, ...]:
    """Level list of a variable as the encoder would see it."""
    info = context.info if isinstance(context, DesignMatrix) else context
    if isinstance(info, DesignInfo):
        if name not in info.categoricals:
            raise NotCategorical(name)
        return info.categoricals[name].levels
    data: Dataset = context
    column = data[name]
    if isinstance(column, CategoricalColumn):
        return column.levels
    return _numeric_as_categorical(name, column.values).levels


def relevel(
    refs: Mapping[str, str] | None,
    variable: str,
    new_reference: str,
    context: Union[Dataset, DesignInfo, DesignMatrix],
) -> dict[str, str]:
    """Return an updated reference map omitting new_reference for variable.

    The context (dataset or prior design) supplies the level list so an
    unknown level is rejected up front.
    """
    if new_reference not in variable_levels(context, variable):
        raise UnknownLevel(variable, new_reference)
    out = dict(refs or {})
    out[variable] = new_reference
    return out


def design_references(design: Union[DesignMatrix, DesignInfo]) -> dict[str, str]:
    """Omitted level per categorical variable, in design order."""
    info = design.info if isinstance(design, DesignMatrix) else design
    if info is None:
        return {}
    return {
        name: ci.scheme.omitted_level for name, ci in info.categoricals.items()
    }


def _profile_level(info: CategoricalInfo, raw) -> str:
    if isinstance(raw, str):
        level = raw
    else:
        level = _numeric_level_name(float(raw))
    if level not in info.levels:
        raise UnknownLevel(info.name, level)
    return level


def profile_row(
    design: Union[DesignMatrix, DesignInfo], profile: Mapping[str, object]
) -> np.ndarray:
    """Encode one profile (variable -> level or value) as a design row.

    Uses the schemes, references, and level counts captured at build
    time, so weighted-effect rows reuse the original group sizes.
    """
    info = design.info if isinstance(design, DesignMatrix) else design
    if info is None:
        raise ValueError("design carries no encoder context")
    ast = info.formula
    missing = [v for v in ast.variables() if v not in profile]
    if missing:
        raise IncompleteProfile(missing)

    cells: list[float] = [1.0]
    seen = {_term_signature(Term(), info.categoricals)}
    ordered = [t for t in ast.terms if t.kind == "main"] + [
        t for t in ast.terms if t.kind == "interaction"
    ]
    for term in ordered:
        signature = _term_signature(term, info.categoricals)
        if signature in seen:
            continue
        seen.add(signature)
        blocks: list[np.ndarray] = []
        for ref in term.factors:
            if ref.name in info.categoricals:
                ci = info.categoricals[ref.name]
                level = _profile_level(ci, profile[ref.name])
                row = _contrast_matrix(ci)[ci.levels.index(level)]
            else:
                value = float(profile[ref.name])  # type: ignore[arg-type]
                if ref.log and value <= 0:
                    raise NonPositiveLog(None)
                row = apply_transform(np.array([value]), ref)
            blocks.append(np.atleast_1d(row))
        for combo in product(*(range(len(b)) for b in blocks)):
            cell = 1.0
            for block, j in zip(blocks, combo):
                cell *= block[j]
            cells.append(cell)
    return np.array(cells)
