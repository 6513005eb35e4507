"""Commutative diagrams, induced (co)kernel maps, the snake connecting map and lemma checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .algebra import Morphism, Semimodule, ValidationReport, Violation
from .errors import HypothesisError, InputError, MismatchError
from .exactness import is_short_exact, junction_verdict
from .morphisms import (
    Classification,
    classify,
    cokernel,
    inverse,
    is_k_uniform,
    kernel,
)
from .substructures import subtractive_closure


@dataclass(frozen=True)
class Diagram:
    """A rows x cols grid of objects with horizontal maps (left to right)
    and vertical maps (top to bottom)."""

    objects: tuple[tuple[Semimodule, ...], ...]
    horiz: tuple[tuple[Morphism, ...], ...]
    vert: tuple[tuple[Morphism, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        objs = tuple(tuple(r) for r in self.objects)
        horiz = tuple(tuple(r) for r in self.horiz)
        vert = tuple(tuple(r) for r in self.vert)
        rows = len(objs)
        if rows == 0 or any(len(r) != len(objs[0]) for r in objs) or not objs[0]:
            raise InputError("diagram objects must form a non-empty rectangular grid")
        cols = len(objs[0])
        if len(horiz) != rows or any(len(r) != cols - 1 for r in horiz):
            raise InputError(f"expected {rows} rows of {cols - 1} horizontal maps")
        if len(vert) != rows - 1 or any(len(r) != cols for r in vert):
            raise InputError(f"expected {rows - 1} rows of {cols} vertical maps")
        semiring = objs[0][0].semiring
        for r in range(rows):
            for c in range(cols):
                if objs[r][c].semiring != semiring:
                    raise MismatchError("diagram mixes semirings")
                if c + 1 < cols:
                    h = horiz[r][c]
                    if h.dom != objs[r][c] or h.cod != objs[r][c + 1]:
                        raise MismatchError(f"horizontal map at ({r}, {c}) has wrong endpoints")
                if r + 1 < rows:
                    v = vert[r][c]
                    if v.dom != objs[r][c] or v.cod != objs[r + 1][c]:
                        raise MismatchError(f"vertical map at ({r}, {c}) has wrong endpoints")
        object.__setattr__(self, "objects", objs)
        object.__setattr__(self, "horiz", horiz)
        object.__setattr__(self, "vert", vert)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.objects), len(self.objects[0])

    @classmethod
    def from_maps(cls, horiz, vert, name: str = "") -> "Diagram":
        """Build from horizontal rows alone; objects are read off the maps."""
        objects = [[row[0].dom] + [h.cod for h in row] for row in horiz]
        return cls(objects, horiz, vert, name)


def validate_diagram(d: Diagram) -> ValidationReport:
    """Every square must commute; each failure names the square and an element."""
    rows, cols = d.shape
    found = []
    for r in range(rows - 1):
        for c in range(cols - 1):
            top, left = d.horiz[r][c], d.vert[r][c]
            right, bottom = d.vert[r][c + 1], d.horiz[r + 1][c]
            for x in top.dom.elements:
                if right.map[top.map[x]] != bottom.map[left.map[x]]:
                    found.append(Violation(f"square ({r}, {c}) commutes", (r, c, x)))
                    break
    return ValidationReport(tuple(found))


def induced_kernel_map(f: Morphism, alpha: Morphism, beta: Morphism) -> Morphism:
    """Restriction of f: X1 -> Y1 to Ker(alpha) -> Ker(beta)."""
    if f.dom != alpha.dom or f.cod != beta.dom:
        raise MismatchError("kernel map: f must run between the domains of alpha and beta")
    ka, kb = kernel(alpha), kernel(beta)
    A, _ = ka.as_semimodule(f"Ker({alpha.name})")
    B, _ = kb.as_semimodule(f"Ker({beta.name})")
    pos = {y: i for i, y in enumerate(kb.members)}
    mapped = []
    for x in ka.members:
        if f.map[x] not in pos:
            raise HypothesisError(f"{f.name} sends kernel element {x} outside Ker({beta.name})", witness=x)
        mapped.append(pos[f.map[x]])
    return Morphism(A, B, tuple(mapped), f"{f.name}_K")


def induced_cokernel_map(f: Morphism, alpha: Morphism, beta: Morphism) -> Morphism:
    """[x] -> [f(x)] from Coker(alpha) to Coker(beta), for f: X2 -> Y2."""
    if f.dom != alpha.cod or f.cod != beta.cod:
        raise MismatchError("cokernel map: f must run between the codomains of alpha and beta")
    ca, cb = cokernel(alpha), cokernel(beta)
    values: dict[int, int] = {}
    for x in f.dom.elements:
        c, v = ca.projection.map[x], cb.projection.map[f.map[x]]
        if values.setdefault(c, v) != v:
            raise HypothesisError(f"{f.name} does not respect cokernel classes at {x}", witness=x)
    return Morphism(ca.quotient, cb.quotient, tuple(values[c] for c in range(ca.quotient.order)),
                    f"{f.name}_C")


@dataclass(frozen=True)
class SnakeCertificate:
    f_K: Morphism
    g_K: Morphism
    f_C: Morphism
    g_C: Morphism
    delta: Morphism
    well_defined: bool
    lifts_checked: int
    disagreement: tuple[int, int, int] | None
    ker_delta_ok: bool
    image_delta_ok: bool
    delta_k_uniform: bool
    four_term_exact: bool | None
    columns: str

    @property
    def all_ok(self) -> bool:
        return (self.well_defined and self.ker_delta_ok and self.image_delta_ok
                and self.delta_k_uniform and self.four_term_exact is not False)


def _ladder(d: Diagram, width: int, lemma: str):
    if d.shape != (2, width):
        raise InputError(f"{lemma} expects a 2x{width} diagram, got {d.shape[0]}x{d.shape[1]}")
    return d.horiz[0], d.horiz[1], d.vert[0]


def snake_hypotheses(d: Diagram, cls: Callable[[Morphism], Classification] = classify) -> list[tuple[str, bool]]:
    (f1, g1), (f2, g2), (a1, a2, a3) = _ladder(d, 3, "SNAKE")
    c1, c2, c3 = cls(a1), cls(a2), cls(a3)
    strict = c1.uniform and c2.uniform and c3.uniform
    relaxed = c1.k_uniform and c2.uniform and c3.k_uniform
    return [
        ("squares commute", validate_diagram(d).ok),
        ("g1 surjective", cls(g1).surjective),
        ("top row exact at M1", junction_verdict(f1, g1).exact),
        ("f2 injective", cls(f2).injective),
        ("bottom row exact at M2", junction_verdict(f2, g2).exact),
        ("columns exact or relaxed", strict or relaxed),
    ]


def connecting_morphism(d: Diagram) -> SnakeCertificate:
    """Build the snake maps and the connecting map, checking every lift."""
    hyps = snake_hypotheses(d)
    for label, ok in hyps:
        if not ok:
            raise HypothesisError(f"snake precondition failed: {label}")
    (f1, g1), (f2, g2), (a1, a2, a3) = _ladder(d, 3, "SNAKE")
    strict = all(classify(a).uniform for a in (a1, a2, a3))
    f_K = induced_kernel_map(f1, a1, a2)
    g_K = induced_kernel_map(g1, a2, a3)
    f_C = induced_cokernel_map(f2, a1, a2)
    g_C = induced_cokernel_map(g2, a2, a3)
    ker3 = kernel(a3).members
    proj1 = cokernel(a1).projection
    L2, M1 = f2.dom, g1.dom
    delta_map = []
    checked = 0
    disagreement = None
    for k3 in ker3:
        chosen = None
        for m1 in M1.elements:
            if g1.map[m1] != k3:
                continue
            for l2 in L2.elements:
                if f2.map[l2] != a2.map[m1]:
                    continue
                checked += 1
                value = proj1.map[l2]
                if chosen is None:
                    chosen = value
                elif value != chosen and disagreement is None:
                    disagreement = (k3, chosen, value)
        if chosen is None:
            raise HypothesisError(f"no admissible lift for kernel element {k3}", witness=k3)
        delta_map.append(chosen)
    delta = Morphism(g_K.cod, f_C.dom, tuple(delta_map), "delta")

    ker_delta = {k for k, v in enumerate(delta.map) if v == 0}
    target = set(subtractive_closure(g_K.cod, set(g_K.map)))
    ker_fc = {c for c in f_C.dom.elements if f_C.map[c] == 0}
    alpha2_canc = classify(a2).cancellative_morphism
    four = None
    if alpha2_canc and classify(g_K).i_uniform:
        four = junction_verdict(g_K, delta).exact and junction_verdict(delta, f_C).exact
    return SnakeCertificate(
        f_K=f_K, g_K=g_K, f_C=f_C, g_C=g_C, delta=delta,
        well_defined=disagreement is None,
        lifts_checked=checked,
        disagreement=disagreement,
        ker_delta_ok=ker_delta == target,
        image_delta_ok=set(delta.map) == ker_fc,
        delta_k_uniform=is_k_uniform(delta),
        four_term_exact=four,
        columns="strict" if strict else "relaxed",
    )


@dataclass(frozen=True)
class ClaimResult:
    name: str
    applicable: bool
    holds: bool | None
    asserted: bool = True


@dataclass(frozen=True)
class LemmaVerdict:
    lemma_id: str
    hypotheses_satisfied: bool
    hypotheses: tuple[tuple[str, bool], ...]
    claims: tuple[ClaimResult, ...] = ()
    conclusion_holds: bool | None = None
    counterexample: dict | None = None

    @property
    def vacuous(self) -> bool:
        return not self.hypotheses_satisfied

    def failed_claims(self) -> list[str]:
        return [c.name for c in self.claims if c.asserted and c.holds is False]

    def observations(self) -> list[ClaimResult]:
        return [c for c in self.claims if not c.asserted]


SHAPES = {
    "SHORT3": (2, 3),
    "DIAG1": (2, 3),
    "DIAG2": (2, 3),
    "SHORT5": (2, 3),
    "FIVE_DETAILS": (2, 5),
    "FIVE": (2, 5),
    "NINE_TOP": (3, 3),
    "NINE_BOTTOM": (3, 3),
    "NINE": (3, 3),
    "SNAKE": (2, 3),
}

LEMMA_IDS = tuple(SHAPES)


class _Facts:
    """Per-diagram cache of classifications and junction verdicts."""

    def __init__(self):
        self._cls: dict[int, Classification] = {}

    def c(self, f: Morphism) -> Classification:
        key = id(f)
        if key not in self._cls:
            self._cls[key] = classify(f)
        return self._cls[key]

    def iso(self, f: Morphism) -> bool:
        return inverse(f) is not None

    def exact(self, f: Morphism, g: Morphism) -> bool:
        return junction_verdict(f, g).exact


def _claim(name: str, antecedent: bool, consequent: Callable[[], bool], asserted: bool = True) -> ClaimResult:
    if not antecedent:
        return ClaimResult(name, False, None, asserted)
    return ClaimResult(name, True, bool(consequent()), asserted)


def _short3(d, F):
    (f1, g1), (f2, g2), (a1, a2, a3) = _ladder(d, 3, "SHORT3")
    hyps = [
        ("squares commute", validate_diagram(d).ok),
        ("alpha1 surjective", F.c(a1).surjective),
        ("alpha3 injective", F.c(a3).injective),
    ]

    def claims():
        r1, r2 = F.exact(f1, g1), F.exact(f2, g2)
        return [
            _claim("alpha2 surjective, row 1 exact => row 2 exact", F.c(a2).surjective and r1, lambda: r2),
            _claim("alpha2 injective, row 2 exact => row 1 exact", F.c(a2).injective and r2, lambda: r1),
            _claim("alpha2 iso => (row 1 exact <=> row 2 exact)", F.iso(a2), lambda: r1 == r2),
        ]
    return hyps, claims


def _diag1(d, F):
    (f1, g1), (f2, g2), (a1, a2, a3) = _ladder(d, 3, "DIAG1")
    hyps = [
        ("squares commute", validate_diagram(d).ok),
        ("row 1 exact", F.exact(f1, g1)),
        ("row 2 exact", F.exact(f2, g2)),
    ]

    def claims():
        c = F.c
        return [
            _claim("g1, alpha1 surjective and alpha2 injective => alpha3 injective",
                   c(g1).surjective and c(a1).surjective and c(a2).injective,
                   lambda: c(a3).injective),
            _claim("f2 injective, alpha3 semi-mono, alpha2 surjective => alpha1 surjective",
                   c(f2).injective and c(a3).semi_mono and c(a2).surjective,
                   lambda: c(a1).surjective),
        ]
    return hyps, claims


def _diag2(d, F):
    (f1, g1), (f2, g2), (a1, a2, a3) = _ladder(d, 3, "DIAG2")
    hyps, _ = _diag1(d, F)
    hyps = hyps + [("f2 semi-mono", F.c(f2).semi_mono)]

    def claims():
        c = F.c
        onto = c(g1).surjective and c(a1).surjective and c(a3).surjective
        return [
            _claim("alpha1, alpha3 semi-mono => alpha2 semi-mono",
                   c(a1).semi_mono and c(a3).semi_mono, lambda: c(a2).semi_mono),
            _claim("f1, alpha2 cancellative, f2 k-uniform, alpha1, alpha3 injective => alpha2 injective",
                   c(f1).cancellative_morphism and c(a2).cancellative_morphism and c(f2).k_uniform
                   and c(a1).injective and c(a3).injective,
                   lambda: c(a2).injective),
            _claim("g1, alpha1, alpha3 surjective => alpha2 semi-epi", onto, lambda: c(a2).semi_epi),
            _claim("g1, alpha1, alpha3 surjective, alpha2 i-uniform => alpha2 surjective",
                   onto and c(a2).i_uniform, lambda: c(a2).surjective),
        ]
    return hyps, claims


def _short5(d, F):
    (f1, g1), (f2, g2), (a1, a2, a3) = _ladder(d, 3, "SHORT5")
    hyps = [
        ("squares commute", validate_diagram(d).ok),
        ("row 1 short exact", is_short_exact(f1, g1)[0]),
        ("row 2 short exact", is_short_exact(f2, g2)[0]),
        ("M1 cancellative", f1.cod.is_cancellative),
        ("M2 cancellative", f2.cod.is_cancellative),
    ]

    def claims():
        c = F.c
        outer = F.iso(a1) and F.iso(a3)
        return [
            _claim("alpha1, alpha3 iso => (alpha2 i-uniform <=> alpha2 iso)",
                   outer, lambda: c(a2).i_uniform == F.iso(a2)),
            _claim("alpha2 iso => (alpha1 surjective <=> alpha3 injective)",
                   F.iso(a2), lambda: c(a1).surjective == c(a3).injective),
        ]
    return hyps, claims


def _five_standing(d, F, lemma):
    (e1, f1, g1, h1), (e2, f2, g2, h2), _ = _ladder(d, 5, lemma)
    return [
        ("squares commute", validate_diagram(d).ok),
        ("row 1 exact at L1, M1, N1", F.exact(e1, f1) and F.exact(f1, g1) and F.exact(g1, h1)),
        ("row 2 exact at L2, M2, N2", F.exact(e2, f2) and F.exact(f2, g2) and F.exact(g2, h2)),
    ]


def _five_details(d, F):
    (e1, f1, g1, h1), _, (gm, a1, a2, a3, dl) = _ladder(d, 5, "FIVE_DETAILS")
    hyps = _five_standing(d, F, "FIVE_DETAILS")

    def claims():
        c = F.c
        canc = c(f1).cancellative_morphism and c(a2).cancellative_morphism
        onto = c(a1).surjective and c(a3).surjective
        return [
            _claim("gamma surjective, alpha1 injective, alpha3 semi-mono => alpha2 semi-mono",
                   c(gm).surjective and c(a1).injective and c(a3).semi_mono,
                   lambda: c(a2).semi_mono),
            _claim("gamma surjective, f1, alpha2 cancellative, alpha1, alpha3 injective => alpha2 injective",
                   c(gm).surjective and canc and c(a1).injective and c(a3).injective,
                   lambda: c(a2).injective),
            _claim("delta semi-mono, alpha1, alpha3 surjective => alpha2 semi-epi",
                   c(dl).semi_mono and onto, lambda: c(a2).semi_epi),
            _claim("delta semi-mono, alpha1, alpha3 surjective, alpha2 i-uniform => alpha2 surjective",
                   c(dl).semi_mono and onto and c(a2).i_uniform, lambda: c(a2).surjective),
            _claim("f1, alpha2 cancellative, gamma surjective, delta injective, alpha1, alpha3 iso"
                   " => alpha2 injective and semi-epi",
                   canc and c(gm).surjective and c(dl).injective and F.iso(a1) and F.iso(a3),
                   lambda: c(a2).injective and c(a2).semi_epi),
        ]
    return hyps, claims


def _five(d, F):
    (e1, f1, g1, h1), _, (gm, a1, a2, a3, dl) = _ladder(d, 5, "FIVE")
    c = F.c
    hyps = _five_standing(d, F, "FIVE") + [
        ("gamma surjective", c(gm).surjective),
        ("delta injective", c(dl).injective),
        ("f1 cancellative", c(f1).cancellative_morphism),
        ("alpha2 cancellative", c(a2).cancellative_morphism),
    ]

    def claims():
        return [
            _claim("alpha1, alpha3 injective => alpha2 injective",
                   c(a1).injective and c(a3).injective, lambda: c(a2).injective),
            _claim("alpha2 i-uniform, alpha1, alpha3 surjective => alpha2 surjective",
                   c(a2).i_uniform and c(a1).surjective and c(a3).surjective,
                   lambda: c(a2).surjective),
            _claim("alpha2 i-uniform, alpha1, alpha3 iso => alpha2 iso",
                   c(a2).i_uniform and F.iso(a1) and F.iso(a3), lambda: F.iso(a2)),
        ]
    return hyps, claims


def _nine_parts(d, lemma):
    if d.shape != (3, 3):
        raise InputError(f"{lemma} expects a 3x3 diagram, got {d.shape[0]}x{d.shape[1]}")
    rows = d.horiz
    alphas, betas = d.vert
    return rows, alphas, betas


def _nine_top(d, F):
    ((f1, g1), (f2, g2), (f3, g3)), (a1, a2, a3), (b1, b2, b3) = _nine_parts(d, "NINE_TOP")
    c = F.c
    hyps = [
        ("squares commute", validate_diagram(d).ok),
        ("alpha2 injective", c(a2).injective),
        ("alpha3 injective", c(a3).injective),
        ("columns exact at the middle row",
         F.exact(a1, b1) and F.exact(a2, b2) and F.exact(a3, b3)),
        ("row 2 exact", F.exact(f2, g2)),
    ]

    def claims():
        onto = c(g2).surjective and c(b1).surjective and F.exact(f3, g3)
        return [
            _claim("f3 injective, f2 cancellative => row 1 exact",
                   c(f3).injective and c(f2).cancellative_morphism, lambda: F.exact(f1, g1)),
            _claim("g2, beta1 surjective, row 3 exact => g1 semi-epi", onto, lambda: c(g1).semi_epi),
            _claim("g2, beta1 surjective, row 3 exact, g1 i-uniform => g1 surjective",
                   onto and c(g1).i_uniform, lambda: c(g1).surjective),
        ]
    return hyps, claims


def _nine_bottom(d, F):
    ((f1, g1), (f2, g2), (f3, g3)), (a1, a2, a3), (b1, b2, b3) = _nine_parts(d, "NINE_BOTTOM")
    c = F.c
    hyps = [
        ("squares commute", validate_diagram(d).ok),
        ("columns exact at the middle row",
         F.exact(a1, b1) and F.exact(a2, b2) and F.exact(a3, b3)),
        ("beta1 surjective", c(b1).surjective),
        ("beta2 surjective", c(b2).surjective),
        ("row 2 exact", F.exact(f2, g2)),
    ]

    def claims():
        return [
            _claim("g1 surjective, f3 i-uniform => row 3 exact",
                   c(g1).surjective and c(f3).i_uniform, lambda: F.exact(f3, g3)),
            _claim("f2, alpha3 injective, alpha2 cancellative, row 1 exact => f3 injective",
                   c(f2).injective and c(a3).injective and c(a2).cancellative_morphism
                   and F.exact(f1, g1),
                   lambda: c(f3).injective),
        ]
    return hyps, claims


def _nine(d, F):
    ((f1, g1), (f2, g2), (f3, g3)), (a1, a2, a3), (b1, b2, b3) = _nine_parts(d, "NINE")
    c = F.c
    hyps = [
        ("squares commute", validate_diagram(d).ok),
        ("L column short exact", is_short_exact(a1, b1)[0]),
        ("M column short exact", is_short_exact(a2, b2)[0]),
        ("N column exact: alpha3 injective, exact at N2", c(a3).injective and F.exact(a3, b3)),
        ("row 2 short exact", is_short_exact(f2, g2)[0]),
        ("alpha2 cancellative", c(a2).cancellative_morphism),
        ("f2 cancellative", c(f2).cancellative_morphism),
        ("f3 i-uniform", c(f3).i_uniform),
        ("g1 i-uniform", c(g1).i_uniform),
    ]

    def claims():
        row1 = is_short_exact(f1, g1)[0]
        row3 = c(f3).injective and F.exact(f3, g3)
        return [_claim("row 1 short exact <=> row 3 exact at L3 and M3", True, lambda: row1 == row3)]
    return hyps, claims


def _snake(d, F):
    hyps = snake_hypotheses(d, F.c)
    (f1, g1), (f2, g2), (a1, a2, a3) = _ladder(d, 3, "SNAKE")

    def claims():
        cert = connecting_morphism(d)
        strict = cert.columns == "strict"
        four_applicable = cert.four_term_exact is not None
        return [
            ClaimResult("delta independent of lifts", True, cert.well_defined),
            ClaimResult("Ker(delta) = closure of g_K(Ker alpha2)", True, cert.ker_delta_ok),
            ClaimResult("delta(Ker alpha3) = Ker(f_C)", True, cert.image_delta_ok),
            ClaimResult("delta k-uniform", True, cert.delta_k_uniform),
            _claim("f1 cancellative => kernel row exact",
                   F.c(f1).cancellative_morphism, lambda: F.exact(cert.f_K, cert.g_K)),
            _claim("f_C i-uniform => cokernel row exact",
                   F.c(cert.f_C).i_uniform, lambda: F.exact(cert.f_C, cert.g_C), asserted=strict),
            ClaimResult("alpha2 cancellative, g_K i-uniform => four-term sequence exact",
                        four_applicable, cert.four_term_exact, asserted=strict),
        ]
    return hyps, claims


_CHECKS = {
    "SHORT3": _short3,
    "DIAG1": _diag1,
    "DIAG2": _diag2,
    "SHORT5": _short5,
    "FIVE_DETAILS": _five_details,
    "FIVE": _five,
    "NINE_TOP": _nine_top,
    "NINE_BOTTOM": _nine_bottom,
    "NINE": _nine,
    "SNAKE": _snake,
}


def lemma_verify(lemma_id: str, d: Diagram) -> LemmaVerdict:
    """Check a lemma's hypotheses on ``d`` and, when they hold, each of its claims."""
    if lemma_id not in _CHECKS:
        raise InputError(f"unknown lemma id {lemma_id!r}")
    rows, cols = SHAPES[lemma_id]
    if d.shape != (rows, cols):
        raise InputError(f"{lemma_id} expects a {rows}x{cols} diagram, got {d.shape[0]}x{d.shape[1]}")
    F = _Facts()
    hyps, claims = _CHECKS[lemma_id](d, F)
    satisfied = all(ok for _, ok in hyps)
    if not satisfied:
        return LemmaVerdict(lemma_id, False, tuple(hyps))
    results = tuple(claims())
    holds = all(r.holds is not False for r in results if r.asserted)
    counterexample = None if holds else {
        "failed": [r.name for r in results if r.asserted and r.holds is False],
        "diagram": diagram_to_dict(d),
    }
    return LemmaVerdict(lemma_id, True, tuple(hyps), results, holds, counterexample)


def semimodule_to_dict(M: Semimodule) -> dict:
    return {
        "name": M.name,
        "add": [list(r) for r in M.add],
        "act": None if M.act is None else [list(r) for r in M.act],
    }


def diagram_to_dict(d: Diagram) -> dict:
    """A self-contained JSON-friendly dump of every table in the diagram."""
    S = d.objects[0][0].semiring
    return {
        "name": d.name,
        "semiring": "N0" if S.is_naturals else {
            "name": S.name, "add": [list(r) for r in S.add],
            "mul": [list(r) for r in S.mul], "one": S.one,
        },
        "objects": [[semimodule_to_dict(M) for M in row] for row in d.objects],
        "horiz": [[list(h.map) for h in row] for row in d.horiz],
        "vert": [[list(v.map) for v in row] for row in d.vert],
    }
