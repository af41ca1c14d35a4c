"""Alcove combinatorics of the special-fibre stratification.

An alcove is a cyclically adjacent chain of lattice coordinate vectors
x_1, ..., x_n in the standard apartment.  Strata correspond to the
minuscule alcoves of size r; their closure order is Bruhat order on the
affine symmetric group, transported through the relative position with
respect to the bottom alcove tau.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .charts import TypeProfile
from .errors import ComputationError, DomainError, MalformedAlcove


def omega_row(n: int, i: int) -> tuple[int, ...]:
    """Row i of the base alcove: i ones then zeros."""
    return tuple(1 if j < i else 0 for j in range(n))


@dataclass(frozen=True)
class Alcove:
    """Rows x_1..x_n; each consecutive pair (cyclically, with x_0 = x_n
    minus the all-ones vector) differs by a single +1 in one coordinate
    and is componentwise ordered."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if n < 1:
            raise MalformedAlcove("alcove needs at least one row")
        if any(len(r) != n for r in rows):
            raise MalformedAlcove("alcove rows must have length n")
        if any(not isinstance(x, int) for r in rows for x in r):
            raise MalformedAlcove("alcove entries must be integers")
        for i in range(n):
            cur = rows[i]
            nxt = rows[i + 1] if i + 1 < n else tuple(x + 1 for x in rows[0])
            if any(c > b for c, b in zip(cur, nxt)):
                raise MalformedAlcove(f"rows {i + 1} and {i + 2} are not ordered")
            if sum(nxt) != sum(cur) + 1:
                raise MalformedAlcove(f"row sums at step {i + 1} do not increase by 1")
        sizes = {sum(rows[i]) - (i + 1) for i in range(n)}
        if len(sizes) != 1:
            raise MalformedAlcove("size differs between rows")

    @property
    def n(self) -> int:
        return len(self.rows)

    def row0(self) -> tuple[int, ...]:
        """Derived row x_0 = x_n - (1,...,1)."""
        return tuple(x - 1 for x in self.rows[-1])


def size(a: Alcove) -> int:
    return sum(a.rows[0]) - 1


def is_minuscule(a: Alcove, r: int) -> bool:
    n = a.n
    for i in range(n):
        om = omega_row(n, i + 1)
        if any(not (0 <= x - o <= 1) for x, o in zip(a.rows[i], om)):
            return False
    return size(a) == r


def profile_of(a: Alcove) -> TypeProfile:
    """Rows t_i = x_i - omega_i, listed t_1..t_n."""
    if not is_minuscule(a, size(a)):
        raise DomainError("profile is defined only for minuscule alcoves")
    n = a.n
    rows = tuple(
        tuple(x - o for x, o in zip(a.rows[i], omega_row(n, i + 1))) for i in range(n)
    )
    return TypeProfile(rows)


def alcove_from_profile(rows) -> Alcove:
    """Inverse of profile_of: x_i = omega_i + t_i."""
    rows = tuple(tuple(r) for r in rows)
    n = len(rows)
    return Alcove(
        tuple(
            tuple(t + o for t, o in zip(rows[i], omega_row(n, i + 1)))
            for i in range(n)
        )
    )


def base_alcove(n: int) -> Alcove:
    return Alcove(tuple(omega_row(n, i + 1) for i in range(n)))


def tau_alcove(n: int, r: int) -> Alcove:
    """The bottom stratum: profile row i is (1^r, 0^(n-r)) rotated right
    by i."""
    if not (0 <= r <= n):
        raise DomainError(f"need 0 <= r <= n, got r={r}")
    rows = tuple(
        tuple(1 if (j - i) % n < r else 0 for j in range(n)) for i in range(1, n + 1)
    )
    return alcove_from_profile(rows)


# A profile listing (t_1..t_n) is admissible exactly when consecutive
# rows only drop 1 -> 0 at the single column where the base alcove
# itself steps up: from t_{p+1} to t_{p+2} that is column (p+1)%n + 1.


def _fall_ok(cur: tuple[int, ...], nxt: tuple[int, ...], allowed: int) -> bool:
    return all(not (c == 1 and x == 0) or j == allowed
               for j, (c, x) in enumerate(zip(cur, nxt)))


@lru_cache(maxsize=None)
def _rows_with_sum(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    rows = [row for row in itertools.product((0, 1), repeat=n) if sum(row) == r]
    return tuple(sorted(rows))


def enumerate_admissible(n: int, r: int) -> list[Alcove]:
    """All minuscule alcoves of size r, ordered lexicographically by
    flattened profile."""
    if not (0 < r < n):
        raise DomainError(f"need 0 < r < n, got n={n}, r={r}")
    candidates = _rows_with_sum(n, r)
    out: list[Alcove] = []
    stack: list[tuple[int, ...]] = []

    def rec(p: int):
        for row in candidates:
            if p > 0 and not _fall_ok(stack[-1], row, p % n):
                continue
            stack.append(row)
            if p == n - 1:
                if _fall_ok(row, stack[0], 0):
                    out.append(alcove_from_profile(tuple(stack)))
            else:
                rec(p + 1)
            stack.pop()

    rec(0)
    return out


def extreme_alcoves(n: int, r: int) -> list[Alcove]:
    """The C(n,r) alcoves with constant profile rows, same order as they
    appear in enumerate_admissible."""
    if not (0 < r < n):
        raise DomainError(f"need 0 < r < n, got n={n}, r={r}")
    return [alcove_from_profile((row,) * n) for row in _rows_with_sum(n, r)]


def is_extreme(a: Alcove) -> bool:
    t = profile_of(a)
    return all(row == t.rows[0] for row in t.rows)


def dual_admissible_profile(rows) -> tuple[tuple[int, ...], ...]:
    """The complement bijection on admissible profiles: complement all
    entries, reverse the step order and reverse the columns.  Swaps row
    sum r for n - r and preserves admissibility."""
    rows = tuple(tuple(r) for r in rows)
    n = len(rows)
    out = []
    for p in range(n):
        q = ((n - p - 1) % n - 1) % n
        out.append(tuple(1 - rows[q][n - 1 - j] for j in range(n)))
    return tuple(out)


def dual_alcove(a: Alcove) -> Alcove:
    return alcove_from_profile(dual_admissible_profile(profile_of(a).rows))


@dataclass(frozen=True)
class AffinePermutation:
    """Periodic bijection of the integers: w(i+n) = w(i) + n, determined
    by the window (w(1), ..., w(n)), residues all distinct and window
    displacements summing to zero."""

    n: int
    window: tuple[int, ...]

    def __post_init__(self):
        window = tuple(self.window)
        object.__setattr__(self, "window", window)
        if self.n < 1 or len(window) != self.n:
            raise DomainError("window length must equal n")
        if {w % self.n for w in window} != set(range(self.n)):
            raise DomainError("window residues must be complete mod n")
        if sum(window) != self.n * (self.n + 1) // 2:
            raise DomainError("window displacements must sum to zero")

    def __call__(self, i: int) -> int:
        q, rem = divmod(i - 1, self.n)
        return self.window[rem] + self.n * q

    def compose(self, other: "AffinePermutation") -> "AffinePermutation":
        if self.n != other.n:
            raise DomainError("rank mismatch")
        return AffinePermutation(self.n, tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "AffinePermutation":
        n = self.n
        window = [0] * n
        for i in range(1, n + 1):
            w = self(i)
            q, rem = divmod(w - 1, n)
            window[rem] = i - n * q
        return AffinePermutation(n, tuple(window))


def identity_permutation(n: int) -> AffinePermutation:
    return AffinePermutation(n, tuple(range(1, n + 1)))


def simple_reflection(n: int, i: int) -> AffinePermutation:
    """s_i for 0 <= i <= n-1; s_0 is the affine one."""
    if not (0 <= i < n):
        raise DomainError(f"simple reflection index out of range: {i}")
    if n == 1:
        raise DomainError("no simple reflections for n = 1")
    window = list(range(1, n + 1))
    if i == 0:
        window[0], window[n - 1] = 0, n + 1
    else:
        window[i - 1], window[i] = i + 1, i
    return AffinePermutation(n, tuple(window))


def reflection(n: int, a: int, b: int) -> AffinePermutation:
    """t_{(a,b)}: swap a+mn with b+mn for all m."""
    if a % n == b % n:
        raise DomainError("reflection needs distinct residues")
    window = list(range(1, n + 1))
    for x, y in ((a, b), (b, a)):
        q, rem = divmod(x - 1, n)
        window[rem] = y - n * q
    return AffinePermutation(n, tuple(window))


def length(w: AffinePermutation) -> int:
    """Number of affine inversions."""
    n, win = w.n, w.window
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            total += abs((win[j] - win[i]) // n)
    return total


def _dsequence(a: Alcove) -> list[int]:
    """d_i = j + n*x_i(j) at the unique coordinate j raised from
    x_{i-1} to x_i; the cyclic increment record of the alcove."""
    n = a.n
    prev = a.row0()
    out = []
    for i in range(n):
        cur = a.rows[i]
        raised = [j for j in range(n) if cur[j] != prev[j]]
        if len(raised) != 1 or cur[raised[0]] != prev[raised[0]] + 1:
            raise MalformedAlcove("rows must differ by a single increment")
        j = raised[0]
        out.append((j + 1) + n * cur[j])
        prev = cur
    return out


def relative_position(a: Alcove) -> AffinePermutation:
    """The unique w with w . tau = a, where tau is the bottom alcove of
    the same size; the action reads any alcove off through its increment
    record."""
    n = a.n
    s = size(a)
    d = _dsequence(a)
    window = []
    for m in range(1, n + 1):
        q, rem = divmod(m - s - 1, n)
        window.append(d[rem] + n * q - n)
    try:
        return AffinePermutation(n, tuple(window))
    except DomainError as exc:
        raise ComputationError(f"increment record is not a permutation: {exc}") from exc


def alcove_from_relative_position(w: AffinePermutation, r: int) -> Alcove:
    """Inverse of relative_position at size r: rebuild the increment
    record d_i = w(i + r) + n, then the rows behind it."""
    n = w.n
    if not (0 <= r <= n):
        raise DomainError(f"need 0 <= r <= n, got r={r}")
    d = [w(i + r) + n for i in range(1, n + 1)]
    return _alcove_from_dsequence(n, d)


def _alcove_from_dsequence(n: int, d: list[int]) -> Alcove:
    # within one window each coordinate is raised exactly once, to the
    # value encoded in d; before that step it sits one lower
    final = {}
    when = {}
    for i, di in enumerate(d, start=1):
        q, rem = divmod(di - 1, n)
        final[rem], when[rem] = q, i
    if len(final) != n:
        raise ComputationError("increment record misses coordinates")
    rows = tuple(
        tuple(final[j] if when[j] <= i else final[j] - 1 for j in range(n))
        for i in range(1, n + 1)
    )
    return Alcove(rows)


def act(w: AffinePermutation, a: Alcove) -> Alcove:
    """Apartment action: w transforms the increment record pointwise."""
    if w.n != a.n:
        raise DomainError("rank mismatch")
    return _alcove_from_dsequence(a.n, [w(di) for di in _dsequence(a)])


def down_covers(w: AffinePermutation) -> list[AffinePermutation]:
    """All u = w t with length(u) = length(w) - 1; the elements covered
    by w in Bruhat order."""
    n = w.n
    lw = length(w)
    if lw == 0:
        return []
    out = []
    seen = set()
    # a reflection moving the length down by exactly 1 cannot displace
    # entries further than the current inversion budget allows
    span = n * (lw + 2)
    for a in range(1, n + 1):
        for b in range(a + 1, a + span + 1):
            if (b - a) % n == 0:
                continue
            if w(a) <= w(b):
                continue
            u = w.compose(reflection(n, a, b))
            if length(u) == lw - 1 and u.window not in seen:
                seen.add(u.window)
                out.append(u)
    return out


_BRUHAT_MEMO: dict[tuple[int, tuple[int, ...]], frozenset] = {}


def _down_set(w: AffinePermutation) -> frozenset:
    key = (w.n, w.window)
    cached = _BRUHAT_MEMO.get(key)
    if cached is not None:
        return cached
    acc = {w.window}
    for u in down_covers(w):
        acc |= _down_set(u)
    result = frozenset(acc)
    _BRUHAT_MEMO[key] = result
    return result


def bruhat_leq(u: AffinePermutation, w: AffinePermutation) -> bool:
    if u.n != w.n:
        raise DomainError("rank mismatch")
    if length(u) > length(w):
        return False
    return u.window in _down_set(w)


@dataclass(frozen=True)
class StrataPoset:
    n: int
    r: int
    nodes: tuple[tuple[Alcove, int], ...]
    covers: frozenset  # pairs (lower index, higher index)
    bottom: int
    tops: tuple[int, ...]


def strata_poset(n: int, r: int) -> StrataPoset:
    """Closure order of the strata: admissible alcoves graded by length,
    with Bruhat covering relations."""
    alcoves = enumerate_admissible(n, r)
    perms = [relative_position(a) for a in alcoves]
    lengths = [length(w) for w in perms]
    index = {w.window: i for i, w in enumerate(perms)}
    if len(index) != len(perms):
        raise ComputationError("relative positions collide")
    covers = set()
    for i, w in enumerate(perms):
        for u in down_covers(w):
            j = index.get(u.window)
            if j is None:
                raise ComputationError("admissible set is not downward closed")
            covers.add((j, i))
    bottoms = [i for i, l in enumerate(lengths) if l == 0]
    if len(bottoms) != 1:
        raise ComputationError("expected a unique bottom stratum")
    tops = tuple(i for i, a in enumerate(alcoves) if is_extreme(a))
    return StrataPoset(
        n=n,
        r=r,
        nodes=tuple(zip(alcoves, lengths)),
        covers=frozenset(covers),
        bottom=bottoms[0],
        tops=tops,
    )
