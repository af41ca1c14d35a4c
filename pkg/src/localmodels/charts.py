"""Chart presentations and explicit equations.

A type profile is the 0/1 matrix of a chart of the lattice-chain model:
one row per chain step (cyclically consecutive), one column per basis
line.  Together with a generalized model datum (the pi-placement matrix
of the chain maps) it determines an affine chart.  Three reductions
shrink the chart to its essential part:

  1. columns never used by the subspaces are deleted (an affine factor
     of dimension r per column),
  2. columns always used are deleted, dropping the rank (an affine
     factor of n-r per column, with the current n),
  3. what remains is a tuple of k x k matrix templates, k = n - r,
     with the cyclic-product-equals-pi relations.

Equation sets for the worst-singularity chart, for two-lattice
parahoric pairs and for free generic tuples are derived on top.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .errors import DomainError
from .polynomials import PI_NAME, Poly, ZZ

Entry = tuple
ZERO_ENTRY: Entry = ("zero",)
ONE_ENTRY: Entry = ("one",)
PI_ENTRY: Entry = ("pi",)


def free_entry(name: str) -> Entry:
    return ("free", name)


@dataclass(frozen=True)
class TypeProfile:
    """Rows are chain steps, columns basis lines, entries 0/1."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise DomainError("profile needs at least one row")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise DomainError("profile rows have unequal lengths")
        if any(x not in (0, 1) for r in rows for x in r):
            raise DomainError("profile entries must be 0 or 1")
        sums = {sum(r) for r in rows}
        if len(sums) > 1:
            raise DomainError("profile rows have unequal sums")
        for j in range(n):
            if _cyclic_falls(tuple(r[j] for r in rows)) > 1:
                raise DomainError(f"column {j + 1} is not a cyclic block of ones")

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def r(self) -> int:
        return sum(self.rows[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)


def _cyclic_falls(col: tuple[int, ...]) -> int:
    m = len(col)
    return sum(1 for i in range(m) if col[i] == 1 and col[(i + 1) % m] == 0)


@dataclass(frozen=True)
class GeneralizedModelDatum:
    """pi placements of the chain maps: eps[i][j] = 1 exactly when the
    i-th map multiplies the j-th basis line by pi.  Column sums are 1,
    so each full cyclic composite is multiplication by pi."""

    m: int
    n: int
    r: int
    eps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        eps = tuple(tuple(row) for row in self.eps)
        object.__setattr__(self, "eps", eps)
        if self.m < 1:
            raise DomainError("datum needs m >= 1")
        if not (0 <= self.r <= self.n):
            raise DomainError("datum rank out of range")
        if len(eps) != self.m or any(len(row) != self.n for row in eps):
            raise DomainError("eps shape mismatch")
        if any(x not in (0, 1) for row in eps for x in row):
            raise DomainError("eps entries must be 0 or 1")
        for j in range(self.n):
            if sum(row[j] for row in eps) != 1:
                raise DomainError(f"eps column {j + 1} must sum to 1")


def tau_profile(n: int, r: int) -> TypeProfile:
    """Profile of the worst-singularity chart: row i is the cyclic right
    rotation of (1^r, 0^(n-r)) by i, rows listed from step 0."""
    _check_nr(n, r)
    rows = []
    for p in range(n):
        rows.append(tuple(1 if (j + 1 - p) % n in range(1, r + 1) else 0 for j in range(n)))
    return TypeProfile(tuple(rows))


def standard_chain_datum(n: int, r: int) -> GeneralizedModelDatum:
    """Full standard lattice chain, steps indexed from lattice 0: the
    i-th map multiplies basis line i+1 by pi."""
    eps = tuple(tuple(1 if j == p else 0 for j in range(n)) for p in range(n))
    return GeneralizedModelDatum(n, n, r, eps)


def alcove_datum(n: int, r: int) -> GeneralizedModelDatum:
    """Standard chain aligned with alcove profile listings, whose first
    row describes lattice 1 rather than lattice 0."""
    eps = tuple(tuple(1 if j == (p + 1) % n else 0 for j in range(n)) for p in range(n))
    return GeneralizedModelDatum(n, n, r, eps)


def parahoric_profile(n: int, r: int, chain: Sequence[int]) -> TypeProfile:
    """Rows of the tau profile restricted to the given chain positions."""
    _check_nr(n, r)
    positions = _check_chain(n, chain)
    full = tau_profile(n, r)
    return TypeProfile(tuple(full.rows[i] for i in positions))


def parahoric_datum(n: int, r: int, chain: Sequence[int]) -> GeneralizedModelDatum:
    """Composite standard-chain maps between consecutive chain positions."""
    positions = _check_chain(n, chain)
    m = len(positions)
    eps = []
    for a in range(m):
        lo = positions[a]
        hi = positions[(a + 1) % m] if a + 1 < m else positions[0] + n
        row = [0] * n
        for i in range(lo, hi):
            row[i % n] = 1
        eps.append(tuple(row))
    return GeneralizedModelDatum(m, n, r, tuple(eps))


def _check_chain(n: int, chain: Sequence[int]) -> tuple[int, ...]:
    positions = tuple(chain)
    if not positions:
        raise DomainError("chain must be nonempty")
    if any(not (0 <= i < n) for i in positions):
        raise DomainError("chain positions must lie in 0..n-1")
    if len(set(positions)) != len(positions) or tuple(sorted(positions)) != positions:
        raise DomainError("chain positions must be strictly increasing")
    return positions


def _check_nr(n: int, r: int) -> None:
    if not (0 < r < n):
        raise DomainError(f"need 0 < r < n, got n={n}, r={r}")


def check_condition(t, d: GeneralizedModelDatum) -> bool:
    """Both halves of the admissibility condition: every column is a
    cyclic block of ones, and wherever a column drops from 1 to 0 the
    datum applies pi at that step.  `t` may be a TypeProfile or a raw
    0/1 row matrix; raw rows that violate the column condition yield
    False instead of the constructor's error."""
    if not isinstance(t, TypeProfile):
        rows = tuple(tuple(r) for r in t)
        try:
            t = TypeProfile(rows)
        except DomainError:
            if rows and all(len(r) == len(rows[0]) for r in rows):
                return False
            raise
    if (t.m, t.n, t.r) != (d.m, d.n, d.r):
        raise DomainError("profile and datum shapes disagree")
    m = t.m
    for p in range(m):
        row, nxt = t.rows[p], t.rows[(p + 1) % m]
        for j in range(t.n):
            if row[j] == 1 and nxt[j] == 0 and d.eps[p][j] != 1:
                return False
    return True


def _require_condition(t: TypeProfile, d: GeneralizedModelDatum) -> None:
    if not check_condition(t, d):
        raise DomainError("profile/datum pair violates the chain condition")


def _delete_columns(t: TypeProfile, d: GeneralizedModelDatum, cols: set[int], new_r: int):
    keep = [j for j in range(t.n) if j not in cols]
    rows = tuple(tuple(row[j] for j in keep) for row in t.rows)
    eps = tuple(tuple(row[j] for j in keep) for row in d.eps)
    return (
        TypeProfile(rows),
        GeneralizedModelDatum(d.m, len(keep), new_r, eps),
    )


def reduce_lemma1(t: TypeProfile, d: GeneralizedModelDatum):
    """Delete columns that no step uses.  Each contributes a free row to
    every subspace: affine factor r per deleted column."""
    _require_condition(t, d)
    dead = {j for j in range(t.n) if all(row[j] == 0 for row in t.rows)}
    t2, d2 = _delete_columns(t, d, dead, t.r)
    return t2, d2, t.r * len(dead)


def reduce_lemma2(t: TypeProfile, d: GeneralizedModelDatum):
    """Delete columns that every step uses, dropping the rank by one per
    column: affine factor n - r (current n) per deleted column."""
    _require_condition(t, d)
    full = {j for j in range(t.n) if all(row[j] == 1 for row in t.rows)}
    factor = len(full) * (t.n - t.r)
    t2, d2 = _delete_columns(t, d, full, t.r - len(full))
    return t2, d2, factor


@dataclass(frozen=True)
class MatrixTemplate:
    step: int
    size: int
    entries: tuple[tuple[Entry, ...], ...]  # entries[row][col]

    def free_names(self) -> list[str]:
        return [e[1] for row in self.entries for e in row if e[0] == "free"]


@dataclass(frozen=True)
class ChartPresentation:
    m: int
    n: int
    r: int
    k: int
    templates: tuple[MatrixTemplate, ...]
    affine_dim: int
    s: int = 0
    t: int = 0
    zero_columns: tuple[int, ...] = ()
    one_columns: tuple[int, ...] = ()
    step_columns: tuple[tuple[int, ...], ...] = ()
    variables: tuple[str, ...] = ()

    def free_variable_count(self) -> int:
        return len(self.variables)

    @property
    def relations(self) -> str:
        return f"all {self.m} cyclic products equal pi times the identity"


def _zero_enumeration(row: tuple[int, ...]) -> list[int]:
    """Order of the unused columns of one step.  When they form a single
    cyclic run the walk starts just past the block of ones, which is
    what makes the worst-singularity templates come out in the
    first-column-free, superdiagonal-ones shape; otherwise ascending."""
    n = len(row)
    zeros = [j for j in range(n) if row[j] == 0]
    if not zeros or len(zeros) == n:
        return zeros
    starts = [j for j in zeros if row[(j - 1) % n] == 1]
    interval = len(starts) == 1
    if interval:
        s = starts[0]
        return [(s + o) % n for o in range(n) if row[(s + o) % n] == 0]
    return zeros


def reduce_lemma3(
    t: TypeProfile,
    d: GeneralizedModelDatum,
    labels: Sequence[int] | None = None,
    namer: Callable[[int, int, int], str] | None = None,
) -> ChartPresentation:
    """Template presentation of the reduced chart: one k x k matrix per
    step, k = n - r.  A column whose basis line survives to the next
    step is forced (a unit vector, times pi where the datum says so);
    columns that disappear are fully free."""
    _require_condition(t, d)
    if any(all(row[j] == 1 for row in t.rows) for j in range(t.n)):
        raise DomainError("always-used columns remain; apply the rank reduction first")
    m, n, r = t.m, t.n, t.r
    k = n - r
    if labels is None:
        labels = tuple(range(1, n + 1))
    if namer is None:
        namer = lambda p, mu, iota: f"x{p}_{mu}_{iota}"
    enums = [_zero_enumeration(t.rows[p]) for p in range(m)]
    templates = []
    variables: list[str] = []
    step_columns = []
    for p in range(m):
        nxt = (p + 1) % m
        cols: list[list[Entry]] = []
        for iota, j in enumerate(enums[p], start=1):
            if t.rows[nxt][j] == 1:
                col = [free_entry(namer(p, mu, iota)) for mu in range(1, k + 1)]
                variables.extend(e[1] for e in col)
            else:
                target = enums[nxt].index(j)
                unit = PI_ENTRY if d.eps[p][j] == 1 else ONE_ENTRY
                col = [unit if mu == target else ZERO_ENTRY for mu in range(k)]
            cols.append(col)
        entries = tuple(tuple(cols[nu][mu] for nu in range(k)) for mu in range(k))
        templates.append(MatrixTemplate(p, k, entries))
        step_columns.append(tuple(labels[j] for j in enums[p]))
    if len(set(variables)) != len(variables):
        raise DomainError("variable namer produced duplicate names")
    return ChartPresentation(
        m=m,
        n=n,
        r=r,
        k=k,
        templates=tuple(templates),
        affine_dim=0,
        step_columns=tuple(step_columns),
        variables=tuple(variables),
    )


def chart_presentation(
    t: TypeProfile,
    d: GeneralizedModelDatum,
    namer: Callable[[int, int, int], str] | None = None,
) -> ChartPresentation:
    """Full reduction: delete never-used and always-used columns, then
    present the remainder as matrix templates.  affine_dim collects the
    two affine factors."""
    _require_condition(t, d)
    n, r = t.n, t.r
    dead = tuple(j + 1 for j in range(n) if all(row[j] == 0 for row in t.rows))
    t1, d1, a1 = reduce_lemma1(t, d)
    keep1 = [j + 1 for j in range(n) if (j + 1) not in dead]
    full = tuple(keep1[j] for j in range(t1.n) if all(row[j] == 1 for row in t1.rows))
    t2, d2, a2 = reduce_lemma2(t1, d1)
    keep2 = tuple(j for j in keep1 if j not in full)
    pres = reduce_lemma3(t2, d2, labels=keep2, namer=namer)
    return replace(
        pres,
        n=n,
        r=r,
        affine_dim=a1 + a2,
        s=len(dead),
        t=len(full),
        zero_columns=dead,
        one_columns=full,
    )


@dataclass(frozen=True)
class PolyIdealSpec:
    """An ideal presentation with integer coefficients: ordered variable
    list (pi always present) and canonical frozen generators."""

    variables: tuple[str, ...]
    generators: tuple[tuple, ...]
    raw_count: int = 0
    affine_dim: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(set(self.variables)) != len(self.variables):
            raise DomainError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.variables)


def _entry_poly(entry: Entry, names: dict[str, int], nv: int) -> Poly:
    kind = entry[0]
    if kind == "zero":
        return Poly.zero(ZZ, nv)
    if kind == "one":
        return Poly.const(ZZ, nv, 1)
    if kind == "pi":
        return Poly.variable(ZZ, nv, 0)
    return Poly.variable(ZZ, nv, names[entry[1]])


def _matmul(A: list[list[Poly]], B: list[list[Poly]], nv: int) -> list[list[Poly]]:
    k = len(A)
    out = []
    for mu in range(k):
        row = []
        for nu in range(k):
            acc = Poly.zero(ZZ, nv)
            for w in range(k):
                acc = acc + A[mu][w] * B[w][nu]
            row.append(acc)
        out.append(row)
    return out


def equations_from_presentation(pres: ChartPresentation) -> PolyIdealSpec:
    """Entries of every cyclic product of the templates minus pi times
    the identity.  Constants are folded during expansion; identically
    zero generators are dropped and exact duplicates deduplicated, with
    the raw entry count m*k^2 retained."""
    variables = (PI_NAME,) + pres.variables
    nv = len(variables)
    names = {v: i for i, v in enumerate(variables)}
    k = pres.k
    m = pres.m
    mats = [
        [[_entry_poly(tpl.entries[mu][nu], names, nv) for nu in range(k)] for mu in range(k)]
        for tpl in pres.templates
    ]
    pi = Poly.variable(ZZ, nv, 0)
    gens: list[tuple] = []
    seen = set()
    raw = 0
    for c in range(m):
        order = [(m - 1 - c - o) % m for o in range(m)]
        prod = mats[order[0]]
        for idx in order[1:]:
            prod = _matmul(prod, mats[idx], nv)
        for mu in range(k):
            for nu in range(k):
                raw += 1
                g = prod[mu][nu] - pi if mu == nu else prod[mu][nu]
                if g.is_zero():
                    continue
                fz = g.freeze()
                if fz not in seen:
                    seen.add(fz)
                    gens.append(fz)
    return PolyIdealSpec(variables, tuple(gens), raw_count=raw, affine_dim=pres.affine_dim)


def equations_U_tau(n: int, r: int) -> PolyIdealSpec:
    """Equations of the worst-singularity chart: n structured templates
    of size n-r (free first column, superdiagonal of ones) whose cyclic
    products all equal pi."""
    _check_nr(n, r)
    namer = lambda p, mu, iota: f"a{p}_{mu}"
    pres = chart_presentation(tau_profile(n, r), standard_chain_datum(n, r), namer=namer)
    spec = equations_from_presentation(pres)
    if spec.raw_count != n * (n - r) ** 2:
        raise DomainError("unexpected raw entry count")
    return spec


def equations_parahoric_pair(n: int, r: int, kappa: int) -> tuple[PolyIdealSpec, int]:
    """Two-lattice chart equations: with q = min(kappa, r) after
    normalizing both below n/2, the ideal is generated by the entries of
    A B - pi and B A - pi for generic q x q matrices, and the chart
    carries an affine factor of dimension (n-r)r - q^2.  Returns the
    ideal together with that affine dimension."""
    _check_nr(n, r)
    if not (0 < kappa < n):
        raise DomainError(f"need 0 < kappa < n, got kappa={kappa}")
    r_n = min(r, n - r)
    k_n = min(kappa, n - kappa)
    q = min(r_n, k_n)
    a_vars = [f"a{i}_{j}" for i in range(1, q + 1) for j in range(1, q + 1)]
    b_vars = [f"b{i}_{j}" for i in range(1, q + 1) for j in range(1, q + 1)]
    variables = (PI_NAME,) + tuple(a_vars) + tuple(b_vars)
    nv = len(variables)
    names = {v: i for i, v in enumerate(variables)}
    A = [[Poly.variable(ZZ, nv, names[f"a{i}_{j}"]) for j in range(1, q + 1)] for i in range(1, q + 1)]
    B = [[Poly.variable(ZZ, nv, names[f"b{i}_{j}"]) for j in range(1, q + 1)] for i in range(1, q + 1)]
    pi = Poly.variable(ZZ, nv, 0)
    gens: list[tuple] = []
    seen = set()
    raw = 0
    for M, N in ((A, B), (B, A)):
        prod = _matmul(M, N, nv)
        for mu in range(q):
            for nu in range(q):
                raw += 1
                g = prod[mu][nu] - pi if mu == nu else prod[mu][nu]
                if g.is_zero():
                    continue
                fz = g.freeze()
                if fz not in seen:
                    seen.add(fz)
                    gens.append(fz)
    affine = (n - r) * r - q * q
    spec = PolyIdealSpec(variables, tuple(gens), raw_count=raw, affine_dim=affine)
    return spec, affine


def equations_generic_tuple(m: int, k: int, target: str | int) -> PolyIdealSpec:
    """m fully generic k x k matrices with every cyclic product equal to
    a common target, either pi or 0 (the special-fibre circular
    complex)."""
    if m < 1 or k < 1:
        raise DomainError("need m >= 1 and k >= 1")
    want_pi = target in (PI_NAME, "pi")
    if not want_pi and target not in (0, "0", "zero"):
        raise DomainError(f"target must be pi or 0, got {target!r}")
    variables = (PI_NAME,) + tuple(
        f"b{i}_{mu}_{nu}" for i in range(m) for mu in range(1, k + 1) for nu in range(1, k + 1)
    )
    nv = len(variables)
    names = {v: i for i, v in enumerate(variables)}
    mats = [
        [[Poly.variable(ZZ, nv, names[f"b{i}_{mu}_{nu}"]) for nu in range(1, k + 1)]
         for mu in range(1, k + 1)]
        for i in range(m)
    ]
    pi = Poly.variable(ZZ, nv, 0)
    zero = Poly.zero(ZZ, nv)
    rhs = pi if want_pi else zero
    gens: list[tuple] = []
    seen = set()
    raw = 0
    for c in range(m):
        order = [(m - 1 - c - o) % m for o in range(m)]
        prod = mats[order[0]]
        for idx in order[1:]:
            prod = _matmul(prod, mats[idx], nv)
        for mu in range(k):
            for nu in range(k):
                raw += 1
                g = prod[mu][nu] - rhs if mu == nu else prod[mu][nu]
                if g.is_zero():
                    continue
                fz = g.freeze()
                if fz not in seen:
                    seen.add(fz)
                    gens.append(fz)
    return PolyIdealSpec(variables, tuple(gens), raw_count=raw, affine_dim=0)


def dualize(t: TypeProfile) -> TypeProfile:
    """Entrywise complement; row sums become n - r."""
    return TypeProfile(tuple(tuple(1 - x for x in row) for row in t.rows))


@dataclass(frozen=True)
class UnramifiedFactor:
    n: int
    r: int
    trivial: bool


def decompose_unramified(d: int, ranks: Sequence[int], n: int) -> tuple[UnramifiedFactor, ...]:
    """Parameters of the product decomposition over an unramified base
    extension of degree d: one standard-model factor per embedding,
    with its own rank; ranks 0 and n give trivial factors."""
    if d < 1:
        raise DomainError("degree must be positive")
    if n < 1:
        raise DomainError("n must be positive")
    ranks = tuple(ranks)
    if len(ranks) != d:
        raise DomainError(f"expected {d} ranks, got {len(ranks)}")
    if any(not (0 <= r <= n) for r in ranks):
        raise DomainError("each rank must lie in 0..n")
    return tuple(UnramifiedFactor(n, r, trivial=r in (0, n)) for r in ranks)
