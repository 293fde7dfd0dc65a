"""Classification of small generalized hyperfocused arcs.

For every 1-factorization class of K_2n (n = 3, 4, 5): when the triple
closure reaches the full factor set, any embedding has all its focus points
on one line, so the class cannot carry a non-linear minimum blocking set
and is recorded as forced linear.  Otherwise the embedding search runs and
each embedding's focus set is tested for linearity directly.  Non-linear
instances are reduced to projective-equivalence classes of their vertex
arcs via the canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass

from hyperarcs.gf2 import FieldSpec
from hyperarcs.arcs import Arc
from hyperarcs.blocking import BlockingError, arc_canonical_form, ghf_eight
from hyperarcs.onefact import (
    OneFactorization,
    closure,
    embed_search,
    enumerate_factorizations,
)


@dataclass(frozen=True)
class ClassRow:
    """Per-factorization-class findings."""

    n: int
    k: int
    index: int
    contains_all: bool
    closure_depth: int
    searched: bool
    embeddings: int
    nonlinear_embeddings: int
    exhausted: bool
    nonlinear_arc_forms: tuple


@dataclass(frozen=True)
class ClassificationReport:
    q: int
    max_k: int
    rows: tuple[ClassRow, ...]
    nonlinear_forms: tuple  # (k, canonical form) pairs, deduplicated
    example_form: tuple | None  # canonical form of the doubled-quadrangle arc
    example_exists: bool
    exhaustive: bool

    @property
    def nonlinear_ks(self) -> tuple[int, ...]:
        return tuple(sorted({k for k, _ in self.nonlinear_forms}))

    def matches_example(self) -> bool | None:
        """Whether the non-linear instances are exactly the known 8-arc
        class; None when that example does not exist at this q."""
        if not self.example_exists:
            return None
        return all(form == self.example_form for _, form in self.nonlinear_forms)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "max_k": self.max_k,
            "classes": [
                {
                    "k": row.k,
                    "index": row.index,
                    "contains_all": row.contains_all,
                    "closure_depth": row.closure_depth,
                    "searched": row.searched,
                    "embeddings": row.embeddings,
                    "nonlinear_embeddings": row.nonlinear_embeddings,
                    "exhausted": row.exhausted,
                    "nonlinear_classes": len(set(row.nonlinear_arc_forms)),
                }
                for row in self.rows
            ],
            "nonlinear": {
                "ks": list(self.nonlinear_ks),
                "projective_classes": len(self.nonlinear_forms),
            },
            "example_exists": self.example_exists,
            "matches_example": self.matches_example(),
            "exhaustive": self.exhaustive,
        }


def classify_ghf(
    spec: FieldSpec,
    max_k: int = 10,
    embed_budget: int | None = None,
    catalogs: dict[int, list[OneFactorization]] | None = None,
) -> ClassificationReport:
    """Classify arcs of size up to max_k admitting minimum blocking sets,
    at the given field order.

    Odd sizes never occur (a minimum blocking set forces k even), so the
    sweep covers k = 2n for n in 3..max_k//2.  catalogs may carry
    pre-enumerated factorization lists keyed by n; embed_budget bounds the
    per-class embedding search node count (None = exhaustive).
    """
    rows: list[ClassRow] = []
    nonlinear: dict[tuple, int] = {}
    exhaustive = True

    for n in range(3, max_k // 2 + 1):
        facts = (
            catalogs[n]
            if catalogs is not None and n in catalogs
            else enumerate_factorizations(n)
        )
        for idx, fact in enumerate(facts):
            res = closure(fact)
            if res.contains_all:
                rows.append(
                    ClassRow(n, 2 * n, idx, True, res.depth, False, 0, 0, True, ())
                )
                continue
            embeddings, exhausted = embed_search(
                fact, spec, max_nodes=embed_budget
            )
            exhaustive = exhaustive and exhausted
            nonlin = [e for e in embeddings if not e.focus_collinear()]
            arcs = sorted({e.arc_points() for e in nonlin})
            forms = tuple(
                sorted({arc_canonical_form(Arc(spec, pts)) for pts in arcs})
            )
            for form in forms:
                nonlinear[(2 * n, form)] = idx
            rows.append(
                ClassRow(
                    n,
                    2 * n,
                    idx,
                    False,
                    res.depth,
                    True,
                    len(embeddings),
                    len(nonlin),
                    exhausted,
                    forms,
                )
            )

    example_form = None
    example_exists = False
    try:
        example_arc, _, _ = ghf_eight(spec)
        example_form = arc_canonical_form(example_arc)
        example_exists = True
    except BlockingError:
        pass

    dedup = tuple(sorted(set(nonlinear)))
    return ClassificationReport(
        q=spec.q,
        max_k=max_k,
        rows=tuple(rows),
        nonlinear_forms=dedup,
        example_form=example_form,
        example_exists=example_exists,
        exhaustive=exhaustive,
    )
