"""Finite semirings and semimodules stored as operation tables.

Every carrier is ``range(order)`` and index 0 is always the additive zero.
Commutative monoids are semimodules over :data:`NATURALS`, whose action
is repeated addition and therefore never tabulated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import AxiomError, InputError, MismatchError

Table = tuple[tuple[int, ...], ...]

MAX_ORDER = 64


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]

    def __str__(self):
        return f"{self.axiom} fails at {self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of an axiom check. Empty ``violations`` means the tables pass."""

    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> list[str]:
        seen = []
        for v in self.violations:
            if v.axiom not in seen:
                seen.append(v.axiom)
        return seen

    def first(self, axiom: str) -> Violation | None:
        for v in self.violations:
            if v.axiom == axiom:
                return v
        return None

    def summary(self, limit: int = 3) -> str:
        if self.ok:
            return "ok"
        lines = []
        for axiom in self.axioms():
            hits = [v.witness for v in self.violations if v.axiom == axiom]
            shown = ", ".join(str(w) for w in hits[:limit])
            more = f" (+{len(hits) - limit} more)" if len(hits) > limit else ""
            lines.append(f"{axiom}: {shown}{more}")
        return "; ".join(lines)

    def __add__(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.violations + other.violations)


def _as_table(rows, n_rows: int | None, n_cols: int | None, bound: int, what: str) -> Table:
    try:
        table = tuple(tuple(int(x) for x in row) for row in rows)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what}: table entries must be integers") from exc
    if n_rows is not None and len(table) != n_rows:
        raise InputError(f"{what}: expected {n_rows} rows, got {len(table)}")
    for i, row in enumerate(table):
        if n_cols is not None and len(row) != n_cols:
            raise InputError(f"{what}: row {i} has length {len(row)}, expected {n_cols}")
        for x in row:
            if not 0 <= x < bound:
                raise InputError(f"{what}: entry {x} in row {i} is out of range 0..{bound - 1}")
    return table


def _report(found: list[Violation]) -> ValidationReport:
    return ValidationReport(tuple(found))


def _collect(found: list[Violation], axiom: str, bad: np.ndarray) -> None:
    for idx in np.argwhere(bad):
        found.append(Violation(axiom, tuple(int(i) for i in idx)))


def _monoid_violations(add: np.ndarray, prefix: str = "") -> list[Violation]:
    n = add.shape[0]
    found: list[Violation] = []
    upper = np.triu(add != add.T, k=1)
    _collect(found, f"{prefix}additive commutativity", upper)
    left = add[add, :]                      # (a+b)+c indexed [a,b,c]
    right = add[:, add]                     # a+(b+c) indexed [a,b,c]
    _collect(found, f"{prefix}additive associativity", left != right)
    _collect(found, f"{prefix}zero is additive identity", add[0] != np.arange(n))
    return found


@dataclass(frozen=True)
class Semiring:
    """A finite semiring ``(S, +, *, 0, 1)`` with zero at index 0.

    The instance :data:`NATURALS` (empty tables) stands for the infinite
    semiring of non-negative integers acting by repeated addition.
    """

    add: Table
    mul: Table
    one: int
    name: str = field(default="", compare=False)

    zero = 0

    def __hash__(self):
        # tables can be large and these objects are used as cache keys
        h = self.__dict__.get("_hash")
        if h is None:
            h = self.__dict__["_hash"] = hash((self.add, self.mul, self.one,))
        return h

    @property
    def is_naturals(self) -> bool:
        return not self.add

    @property
    def order(self) -> int:
        return len(self.add)

    @property
    def elements(self) -> range:
        return range(len(self.add))

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def __repr__(self):
        if self.is_naturals:
            return "Semiring(N0)"
        return f"Semiring({self.name or 'anonymous'}, order={self.order})"


NATURALS = Semiring((), (), 1, "N0")


def validate_semiring(add, mul, one: int | None = None) -> ValidationReport:
    """Check every semiring axiom, returning all violations with witnesses.

    Raises :class:`InputError` for malformed tables; axiom failures are
    reported, never raised.
    """
    try:
        n = len(add)
    except TypeError as exc:
        raise InputError("semiring: addition table must be a sequence of rows") from exc
    if n == 0:
        raise InputError("semiring: empty carrier")
    if n > MAX_ORDER:
        raise InputError(f"semiring: order {n} exceeds {MAX_ORDER}")
    add_t = _as_table(add, n, n, n, "semiring addition")
    mul_t = _as_table(mul, n, n, n, "semiring multiplication")
    if one is None:
        one = 1 if n > 1 else 0
    if not 0 <= one < n:
        raise InputError(f"semiring: one index {one} out of range")
    A = np.array(add_t, dtype=np.int64)
    M = np.array(mul_t, dtype=np.int64)
    idx = np.arange(n)
    found = _monoid_violations(A)
    _collect(found, "multiplicative associativity", M[M, :] != M[:, M])
    _collect(found, "one is left multiplicative identity", M[one] != idx)
    _collect(found, "one is right multiplicative identity", M[:, one] != idx)
    # x(y+z) = xy + xz, indexed [x, y, z]
    left_dist = M[:, A] != A[M[:, :, None], M[:, None, :]]
    _collect(found, "left distributivity", left_dist)
    # (y+z)x = yx + zx, indexed [y, z, x]
    right_dist = M[A, :] != A[M[:, None, :], M[None, :, :]]
    _collect(found, "right distributivity", right_dist)
    _collect(found, "zero is left absorbing", M[0] != 0)
    _collect(found, "zero is right absorbing", M[:, 0] != 0)
    if one == 0:
        found.append(Violation("zero equals one", (0, 0)))
    return _report(found)


def make_semiring(add, mul, one: int | None = None, name: str = "") -> Semiring:
    report = validate_semiring(add, mul, one)
    if not report.ok:
        raise AxiomError(f"semiring {name or '<anonymous>'}: {report.summary()}", report)
    n = len(add)
    return Semiring(
        _as_table(add, n, n, n, "add"),
        _as_table(mul, n, n, n, "mul"),
        1 if one is None else one,
        name,
    )


SEMIRING_FAMILIES = ("boolean", "zmod", "trunc_nat", "trunc_tropical_min")


def builtin_semiring(family: str, k: int | None = None) -> Semiring:
    """Construct one of the builtin finite semirings.

    ``zmod(n)`` is the ring of integers mod n, ``trunc_nat(k)`` is
    ``{0..k}`` with saturating sum and product, and ``trunc_tropical_min(k)``
    is ``{inf, 0..k}`` under ``min`` and saturating ``+`` with ``inf`` at
    index 0 and the element ``0`` (the multiplicative one) at index 1.
    """
    if family == "boolean":
        return make_semiring([[0, 1], [1, 1]], [[0, 0], [0, 1]], 1, "boolean")
    if k is None:
        raise InputError(f"semiring family {family!r} needs a parameter k")
    k = int(k)
    if family == "zmod":
        if not 1 <= k <= MAX_ORDER:
            raise InputError(f"zmod: n={k} outside 1..{MAX_ORDER}")
        add = [[(a + b) % k for b in range(k)] for a in range(k)]
        mul = [[(a * b) % k for b in range(k)] for a in range(k)]
        return make_semiring(add, mul, 1 % k, f"zmod({k})")
    if family == "trunc_nat":
        if not 0 <= k < MAX_ORDER:
            raise InputError(f"trunc_nat: k={k} outside 0..{MAX_ORDER - 1}")
        r = range(k + 1)
        add = [[min(a + b, k) for b in r] for a in r]
        mul = [[min(a * b, k) for b in r] for a in r]
        return make_semiring(add, mul, min(1, k), f"trunc_nat({k})")
    if family == "trunc_tropical_min":
        if not 0 <= k <= MAX_ORDER - 2:
            raise InputError(f"trunc_tropical_min: k={k} outside 0..{MAX_ORDER - 2}")
        # index 0 is inf, index i+1 is the integer i
        value = [None] + list(range(k + 1))
        n = k + 2

        def index(v):
            return 0 if v is None else v + 1

        def tmin(a, b):
            if a is None:
                return b
            if b is None:
                return a
            return min(a, b)

        def tplus(a, b):
            if a is None or b is None:
                return None
            return min(a + b, k)

        add = [[index(tmin(value[i], value[j])) for j in range(n)] for i in range(n)]
        mul = [[index(tplus(value[i], value[j])) for j in range(n)] for i in range(n)]
        return make_semiring(add, mul, 1, f"trunc_tropical_min({k})")
    raise InputError(f"unknown semiring family {family!r}")


@dataclass(frozen=True)
class Semimodule:
    """A finite right semimodule: commutative monoid plus scalar action.

    ``act[m][s]`` is ``m * s``. Over :data:`NATURALS` ``act`` is ``None``.
    """

    add: Table
    act: Table | None
    semiring: Semiring = NATURALS
    name: str = field(default="", compare=False)

    zero = 0

    def __hash__(self):
        # tables can be large and these objects are used as cache keys
        h = self.__dict__.get("_hash")
        if h is None:
            h = self.__dict__["_hash"] = hash((self.add, self.act, self.semiring,))
        return h

    @property
    def order(self) -> int:
        return len(self.add)

    @property
    def elements(self) -> range:
        return range(len(self.add))

    @property
    def scalars(self) -> range:
        """Scalars whose action must be checked explicitly.

        Empty over the naturals: there closure and compatibility under the
        action follow from closure and compatibility under addition.
        """
        if self.act is None:
            return range(0)
        return range(self.semiring.order)

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def scale(self, m: int, s: int) -> int:
        if self.act is not None:
            return self.act[m][s]
        acc = 0
        for _ in range(s):
            acc = self.add[acc][m]
        return acc

    def total(self, items: Iterable[int]) -> int:
        acc = 0
        for x in items:
            acc = self.add[acc][x]
        return acc

    @cached_property
    def cancellable(self) -> tuple[int, ...]:
        return tuple(cancellable_elements(self).members)

    @property
    def is_cancellative(self) -> bool:
        return len(self.cancellable) == self.order

    @property
    def is_idempotent(self) -> bool:
        return all(self.add[m][m] == m for m in self.elements)

    def __repr__(self):
        label = self.name or "anonymous"
        return f"Semimodule({label}, order={self.order}, over={self.semiring.name})"


def validate_semimodule(add, act, semiring: Semiring = NATURALS) -> ValidationReport:
    """Check every semimodule axiom over ``semiring``, collecting all violations."""
    try:
        n = len(add)
    except TypeError as exc:
        raise InputError("semimodule: addition table must be a sequence of rows") from exc
    if n == 0:
        raise InputError("semimodule: empty carrier")
    if n > MAX_ORDER:
        raise InputError(f"semimodule: order {n} exceeds {MAX_ORDER}")
    add_t = _as_table(add, n, n, n, "semimodule addition")
    A = np.array(add_t, dtype=np.int64)
    found = _monoid_violations(A)
    if semiring.is_naturals:
        if act is not None:
            raise InputError("semimodule over N0 must not carry an action table")
        return _report(found)
    if act is None:
        raise InputError(f"semimodule over {semiring.name} needs an action table")
    k = semiring.order
    act_t = _as_table(act, n, k, n, "semimodule action")
    X = np.array(act_t, dtype=np.int64)
    SA = np.array(semiring.add, dtype=np.int64)
    SM = np.array(semiring.mul, dtype=np.int64)
    idx = np.arange(n)
    # (m s) s' = m (s s'), indexed [m, s, s']
    _collect(found, "(m*s)*s' = m*(s*s')", X[X, :] != X[:, SM])
    # (m + m') s = m s + m' s, indexed [m, m', s]
    lhs = X[A, :]
    rhs = A[X[:, None, :], X[None, :, :]]
    _collect(found, "(m+m')*s = m*s+m'*s", lhs != rhs)
    # m (s + s') = m s + m s', indexed [m, s, s']
    lhs = X[:, SA]
    rhs = A[X[:, :, None], X[:, None, :]]
    _collect(found, "m*(s+s') = m*s+m*s'", lhs != rhs)
    _collect(found, "m*1 = m", X[:, semiring.one] != idx)
    _collect(found, "m*0_S = 0_M", (X[:, 0] != 0)[:, None])
    _collect(found, "0_M*s = 0_M", X[0] != 0)
    return _report(found)


def make_semimodule(add, act=None, semiring: Semiring = NATURALS, name: str = "") -> Semimodule:
    report = validate_semimodule(add, act, semiring)
    if not report.ok:
        raise AxiomError(f"semimodule {name or '<anonymous>'}: {report.summary()}", report)
    n = len(add)
    act_t = None if act is None else _as_table(act, n, semiring.order, n, "act")
    return Semimodule(_as_table(add, n, n, n, "add"), act_t, semiring, name)


def _unit_multiples(semiring: Semiring) -> list[int]:
    """For each scalar s, the least c with c*1 = s; raises if s is not a sum of ones."""
    count = [-1] * semiring.order
    acc, c = 0, 0
    while count[acc] < 0:
        count[acc] = c
        acc = semiring.add[acc][semiring.one]
        c += 1
    missing = [s for s, c in enumerate(count) if c < 0]
    if missing:
        raise InputError(
            f"{semiring.name}: scalars {missing} are not sums of 1; supply an explicit action"
        )
    return count


def natural_semimodule(add, semiring: Semiring = NATURALS, name: str = "") -> Semimodule:
    """Give a commutative monoid the action forced by ``m * (1+...+1) = m+...+m``.

    Only possible when every scalar is a sum of ones; validation decides
    whether the resulting action satisfies the axioms.
    """
    if semiring.is_naturals:
        return make_semimodule(add, None, semiring, name)
    n = len(add)
    add_t = _as_table(add, n, n, n, "add")
    counts = _unit_multiples(semiring)
    act = []
    for m in range(n):
        multiples = [0]
        for _ in range(max(counts)):
            multiples.append(add_t[multiples[-1]][m])
        act.append([multiples[c] for c in counts])
    return make_semimodule(add_t, act, semiring, name)


def cyclic_group(n: int, semiring: Semiring = NATURALS) -> Semimodule:
    """Z_n."""
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    return natural_semimodule(add, semiring, f"Z_{n}")


def saturating_monoid(k: int, semiring: Semiring = NATURALS) -> Semimodule:
    """T_k = ({0..k}, min(a+b, k))."""
    r = range(k + 1)
    add = [[min(a + b, k) for b in r] for a in r]
    return natural_semimodule(add, semiring, f"T_{k}")


def boolean_monoid(semiring: Semiring = NATURALS) -> Semimodule:
    """B = ({0,1}, 1+1 = 1)."""
    return natural_semimodule([[0, 1], [1, 1]], semiring, "B")


def chain_semilattice(n: int, semiring: Semiring = NATURALS) -> Semimodule:
    """({0..n-1}, max)."""
    add = [[max(a, b) for b in range(n)] for a in range(n)]
    return natural_semimodule(add, semiring, f"C_{n}")


def regular_module(semiring: Semiring) -> Semimodule:
    """The semiring acting on itself by right multiplication."""
    if semiring.is_naturals:
        raise InputError("N0 is infinite and has no regular module here")
    return make_semimodule(semiring.add, semiring.mul, semiring, f"{semiring.name}_S")


def zero_module(semiring: Semiring = NATURALS) -> Semimodule:
    act = None if semiring.is_naturals else [[0] * semiring.order]
    return Semimodule(((0,),), None if act is None else (tuple(act[0]),), semiring, "0")


def direct_sum(M: Semimodule, N: Semimodule, name: str = "") -> Semimodule:
    """M (+) N with pair (m, n) stored at index m * |N| + n."""
    if M.semiring != N.semiring:
        raise InputError("direct sum of semimodules over different semirings")
    p, q = M.order, N.order
    add = [
        [M.add[a // q][b // q] * q + N.add[a % q][b % q] for b in range(p * q)]
        for a in range(p * q)
    ]
    act = None
    if M.act is not None:
        act = [
            [M.act[a // q][s] * q + N.act[a % q][s] for s in M.scalars]
            for a in range(p * q)
        ]
    return make_semimodule(add, act, M.semiring, name or f"({M.name}+{N.name})")


SEMIMODULE_FAMILIES = ("cyclic", "saturating", "boolean", "chain", "regular", "zero")


def builtin_semimodule(family: str, k: int | None = None, semiring: Semiring = NATURALS) -> Semimodule:
    if family == "cyclic":
        return cyclic_group(_need(k, family, 1), semiring)
    if family == "saturating":
        return saturating_monoid(_need(k, family, 0), semiring)
    if family == "boolean":
        return boolean_monoid(semiring)
    if family == "chain":
        return chain_semilattice(_need(k, family, 1), semiring)
    if family == "regular":
        return regular_module(semiring)
    if family == "zero":
        return zero_module(semiring)
    raise InputError(f"unknown semimodule family {family!r}")


def _need(k, family: str, low: int) -> int:
    if k is None:
        raise InputError(f"semimodule family {family!r} needs a parameter k")
    k = int(k)
    if not low <= k <= MAX_ORDER - (0 if family == "cyclic" else 1):
        raise InputError(f"{family}: parameter {k} out of range")
    return k


@dataclass(frozen=True)
class ElementSet:
    """A subset of a semimodule's carrier, stored sorted without duplicates."""

    parent: Semimodule
    members: tuple[int, ...]

    def __post_init__(self):
        ms = tuple(self.members)
        if list(ms) != sorted(set(ms)):
            raise InputError(f"element set {ms} must be sorted and duplicate-free")
        if ms and not (0 <= ms[0] and ms[-1] < self.parent.order):
            raise InputError(f"element set {ms} leaves the carrier of {self.parent.name}")
        object.__setattr__(self, "members", ms)

    @classmethod
    def of(cls, parent: Semimodule, items: Iterable[int]) -> "ElementSet":
        return cls(parent, tuple(sorted(set(int(x) for x in items))))

    def __contains__(self, x: int) -> bool:
        return x in self._lookup

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    @cached_property
    def _lookup(self) -> frozenset[int]:
        return frozenset(self.members)

    def as_set(self) -> frozenset[int]:
        return self._lookup


def cancellable_elements(M: Semimodule) -> ElementSet:
    """Elements s with a + s = b + s only when a = b."""
    keep = []
    for s in M.elements:
        column = [M.add[a][s] for a in M.elements]
        if len(set(column)) == M.order:
            keep.append(s)
    return ElementSet(M, tuple(keep))


@dataclass(frozen=True)
class Morphism:
    """A linear map ``dom -> cod`` given by the image of every element."""

    dom: Semimodule
    cod: Semimodule
    map: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __hash__(self):
        # tables can be large and these objects are used as cache keys
        h = self.__dict__.get("_hash")
        if h is None:
            h = self.__dict__["_hash"] = hash((self.dom, self.cod, self.map,))
        return h

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image_of(self, items: Iterable[int]) -> list[int]:
        return sorted({self.map[x] for x in items})

    def __repr__(self):
        return f"Morphism({self.name or 'anonymous'}: {list(self.map)})"


def validate_morphism(dom: Semimodule, cod: Semimodule, mapping: Sequence[int]) -> ValidationReport:
    """Check that ``mapping`` is an S-linear map, reporting every failure."""
    if dom.semiring != cod.semiring:
        raise MismatchError(
            f"morphism between semimodules over {dom.semiring.name} and {cod.semiring.name}"
        )
    try:
        f = tuple(int(x) for x in mapping)
    except (TypeError, ValueError) as exc:
        raise InputError("morphism: map entries must be integers") from exc
    if len(f) != dom.order:
        raise InputError(f"morphism: map has length {len(f)}, domain has order {dom.order}")
    for x in f:
        if not 0 <= x < cod.order:
            raise InputError(f"morphism: image {x} outside codomain of order {cod.order}")
    found: list[Violation] = []
    if f[0] != 0:
        found.append(Violation("f(0) = 0", (0,)))
    for a in dom.elements:
        for b in range(a, dom.order):
            if f[dom.add[a][b]] != cod.add[f[a]][f[b]]:
                found.append(Violation("f(a+b) = f(a)+f(b)", (a, b)))
    for m in dom.elements:
        for s in dom.scalars:
            if f[dom.act[m][s]] != cod.act[f[m]][s]:
                found.append(Violation("f(m*s) = f(m)*s", (m, s)))
    return _report(found)


def make_morphism(dom: Semimodule, cod: Semimodule, mapping: Sequence[int], name: str = "") -> Morphism:
    report = validate_morphism(dom, cod, mapping)
    if not report.ok:
        raise AxiomError(f"morphism {name or '<anonymous>'}: {report.summary()}", report)
    return Morphism(dom, cod, tuple(int(x) for x in mapping), name)


def identity(M: Semimodule) -> Morphism:
    return Morphism(M, M, tuple(M.elements), f"id_{M.name}")


def zero_map(M: Semimodule, N: Semimodule) -> Morphism:
    if M.semiring != N.semiring:
        raise MismatchError("zero map between semimodules over different semirings")
    return Morphism(M, N, (0,) * M.order, "0")
