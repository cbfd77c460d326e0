"""Parameter admissibility and nonexistence filters for quasi-symmetric designs.

The Calderbank criterion applies to an odd prime p with x = y (mod p): the
design can only exist if at least one of a list of congruence / quadratic
residue conditions holds.  Verdicts keep the per-condition booleans so tests
can pin exactly which branch fired.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from typing import Iterable


@dataclass(frozen=True)
class Inadmissible:
    reason: str

    def __bool__(self) -> bool:
        return False


def derive_params(v: int, k: int, lam: int):
    """Replication number r and block count b, or an Inadmissible report."""
    if not (2 <= k < v and lam >= 1):
        raise ValueError("need 2 <= k < v and lambda >= 1")
    num_r = lam * (v - 1)
    if num_r % (k - 1) != 0:
        return Inadmissible("r = %d/%d is not an integer" % (num_r, k - 1))
    r = num_r // (k - 1)
    num_b = lam * v * (v - 1)
    if num_b % (k * (k - 1)) != 0:
        return Inadmissible("b = %d/%d is not an integer" % (num_b, k * (k - 1)))
    return r, num_b // (k * (k - 1))


def is_square_mod(a: int, p: int) -> bool:
    """True iff a is a square in GF(p) (0 counts as a square)."""
    a %= p
    return any(pow(t, 2, p) == a for t in range((p // 2) + 1))


CONDITION_NAMES = ("1", "2", "3", "4a", "4b", "4c", "4d", "4e", "4f")


@dataclass(frozen=True)
class CalderbankVerdict:
    p: int
    s: int
    conditions: dict[str, bool] = field(hash=False)

    @property
    def excluded(self) -> bool:
        return not any(self.conditions.values())


def _odd_primes_dividing(n: int) -> list[int]:
    out = []
    d = 3
    n = abs(n)
    while n % 2 == 0 and n:
        n //= 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 2
    if n > 2:
        out.append(n)
    return out


def calderbank_filter(v: int, k: int, lam: int, x: int, y: int
                      ) -> list[CalderbankVerdict]:
    """One verdict per applicable odd prime p (p | y-x, so x = y = s mod p).

    An empty list means the criterion does not apply to these parameters.
    The design is ruled out by a verdict iff none of its conditions holds.
    """
    params = derive_params(v, k, lam)
    if isinstance(params, Inadmissible):
        raise ValueError("inadmissible parameters: %s" % params.reason)
    r, b = params
    verdicts = []
    for p in _odd_primes_dividing(y - x):
        s = x % p
        cond = {}
        cond["1"] = (r - lam) % (p * p) == 0
        cond["2"] = (v % 2 == 0 and v % p == 0 and k % p == s == 0
                     and is_square_mod((-1) ** (v // 2), p))
        cond["3"] = (v % 2 == 1 and v % p == k % p == s != 0
                     and is_square_mod((-1) ** ((v - 1) // 2) * s, p))
        four = r % p == 0 and lam % p == 0
        cond["4a"] = four and v % 2 == 0 and v % p == k % p == s != 0
        cond["4b"] = (four and v % 2 == 0 and k % p == s != 0
                      and not is_square_mod(v * pow(s, p - 2, p), p))
        cond["4c"] = (four and v % (2 * p) == 1 and r % (p * p) == 0
                      and k % p == s != 0)
        cond["4d"] = four and v % (2 * p) == p and k % p == 0 and s == 0
        cond["4e"] = (four and v % 2 == 1 and k % p == s == 0
                      and not is_square_mod(v, p))
        cond["4f"] = (four and v % 2 == 1 and k % p == s == 0
                      and is_square_mod(v, p)
                      and is_square_mod((-1) ** ((v - 1) // 2), p))
        verdicts.append(CalderbankVerdict(p=p, s=s, conditions=cond))
    return verdicts


def is_excluded(v: int, k: int, lam: int, x: int, y: int) -> bool:
    return any(verd.excluded for verd in calderbank_filter(v, k, lam, x, y))


# ---------------------------------------------------------------------------
# Fixed-structure feasibility: exhaustive enumeration of small integer systems
# used in the "an automorphism of order 7 fixes nothing" arguments.


@dataclass
class FixedStructureSystem:
    """Nonnegative-integer variables with bounds, linear constraints, and an
    outer parameter m.

    Constraints are triples (coeffs, op, rhs) where coeffs maps variable
    names to integer coefficients (the name "m" may appear and is substituted
    before enumeration), op is one of "==", "<=", and rhs is a coefficient
    map as well (constant term under the name "").  Divisibility constraints
    are pairs (coeffs, modulus).
    """

    variables: list[str]
    bounds: dict[str, tuple[int, int]]
    constraints: list[tuple[dict[str, int], str, dict[str, int]]]
    divisibility: list[tuple[dict[str, int], int]] = field(default_factory=list)

    def _eval(self, coeffs: dict[str, int], assign: dict[str, int], m: int) -> int:
        total = coeffs.get("", 0)
        for name, c in coeffs.items():
            if name == "":
                continue
            if name == "m":
                total += c * m
            elif name == "m2":
                total += c * m * m
            else:
                total += c * assign[name]
        return total

    def solutions(self, m: int) -> list[dict[str, int]]:
        for name, (lo, hi) in self.bounds.items():
            if hi is None:
                raise ValueError("variable %s is unbounded" % name)
        out = []
        # Normalize every constraint to sum(c_i * var_i) (op) const, with the
        # m-terms folded into the constant, so partial sums can be pruned by
        # the interval of the remaining variables.
        norm = []
        for coeffs, op, rhs in self.constraints:
            var_c = {}
            const = 0
            for name, c in coeffs.items():
                if name in self.bounds:
                    var_c[name] = var_c.get(name, 0) + c
                else:
                    const += c * (m if name == "m" else m * m if name == "m2" else 1)
            for name, c in rhs.items():
                if name in self.bounds:
                    var_c[name] = var_c.get(name, 0) - c
                else:
                    const -= c * (m if name == "m" else m * m if name == "m2" else 1)
            norm.append((var_c, op, -const))

        def residual_interval(var_c, idx):
            lo_sum = hi_sum = 0
            for name in self.variables[idx:]:
                c = var_c.get(name, 0)
                if not c:
                    continue
                blo, bhi = self.bounds[name]
                if c > 0:
                    lo_sum += c * blo
                    hi_sum += c * bhi
                else:
                    lo_sum += c * bhi
                    hi_sum += c * blo
            return lo_sum, hi_sum

        def rec(idx: int, assign: dict[str, int], partial: list[int]) -> None:
            for ci, (var_c, op, target) in enumerate(norm):
                lo_r, hi_r = residual_interval(var_c, idx)
                if op == "==":
                    if not (partial[ci] + lo_r <= target <= partial[ci] + hi_r):
                        return
                else:
                    if partial[ci] + lo_r > target:
                        return
            if idx == len(self.variables):
                for coeffs, mod in self.divisibility:
                    if self._eval(coeffs, assign, m) % mod != 0:
                        return
                out.append(dict(assign))
                return
            name = self.variables[idx]
            lo, hi = self.bounds[name]
            for val in range(lo, hi + 1):
                assign[name] = val
                nxt = [p + n[0].get(name, 0) * val for p, n in zip(partial, norm)]
                rec(idx + 1, assign, nxt)
            del assign[name]

        rec(0, {}, [0] * len(norm))
        return out


def fixed_structure_feasible(sys: FixedStructureSystem,
                             m_range: Iterable[int]) -> dict[int, list[dict[str, int]]]:
    """All solutions, grouped by the parameter m."""
    return {m: sys.solutions(m) for m in m_range}


def pbd_fixed_points_system() -> FixedStructureSystem:
    """Fixed points/blocks of an order-7 automorphism of a (56,16,6) design.

    The fixed structure is a pairwise balanced design on 7m points with
    block degrees 9 and 16, point degrees 8, 15, 22, and at most 77 blocks
    counting the non-fixed ones through low-degree points.
    """
    return FixedStructureSystem(
        variables=["v8", "v15", "v22", "b9", "b16"],
        bounds={"v8": (0, 49), "v15": (0, 49), "v22": (0, 49),
                "b9": (0, 200), "b16": (0, 77)},
        constraints=[
            ({"v8": 1, "v15": 1, "v22": 1}, "==", {"m": 7}),
            ({"v8": 8, "v15": 15, "v22": 22}, "==", {"b9": 9, "b16": 16}),
            # pairs (P,Q,B): C(9,2) b9 + C(16,2) b16 = C(7m,2) * 6
            #   = 6 * 7m(7m-1)/2 = 147 m^2 - 21 m
            ({"b9": 36, "b16": 120}, "==", {"m2": 147, "m": -21}),
            ({"v8": 14, "v15": 7, "b9": 1, "b16": 1}, "<=", {"": 77}),
        ],
    )


def pbd_fixed_points_system_56_12_9() -> FixedStructureSystem:
    """Fixed-structure count for an order-7 automorphism of a (56,12,9) design.

    Double counting pairs on fixed blocks of degrees 5 and 12:
    C(5,2) b5 + C(12,2) b12 = C(7m,2) * 9, with 0 <= b5 <= 6.
    """
    return FixedStructureSystem(
        variables=["b5", "b12"],
        bounds={"b5": (0, 6), "b12": (0, 200)},
        constraints=[
            # 10 b5 + 66 b12 = 9 * 7m(7m-1)/2; doubled to stay integral:
            ({"b5": 20, "b12": 132}, "==", {"m2": 441, "m": -63}),
        ],
    )


def orbit_size_distributions(total: int, sizes: Iterable[int]
                             ) -> list[tuple[int, ...]]:
    """All multisets over the allowed orbit sizes summing to the total,
    sorted ascending within each distribution."""
    sizes = sorted(set(sizes))
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, idx: int, cur: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(cur))
            return
        for i in range(idx, len(sizes)):
            s = sizes[i]
            if s <= remaining:
                cur.append(s)
                rec(remaining - s, i, cur)
                cur.pop()

    rec(total, 0, [])
    return sorted(out)


# Rows 47-52 of the admissible-parameter table for v = 56.
TABLE_V56 = (
    (47, 56, 16, 18, 4, 8),
    (48, 56, 15, 42, 3, 6),
    (49, 56, 12, 9, 0, 3),
    (50, 56, 21, 24, 6, 9),
    (51, 56, 20, 19, 5, 8),
    (52, 56, 16, 6, 4, 6),
)


def table_verdicts():
    """(row, v, k, lambda, r, b, x, y, verdict-string) for the v=56 table."""
    rows = []
    for no, v, k, lam, x, y in TABLE_V56:
        r, b = derive_params(v, k, lam)
        verds = calderbank_filter(v, k, lam, x, y)
        if not verds:
            verdict = "not applicable"
        elif any(vd.excluded for vd in verds):
            p = next(vd.p for vd in verds if vd.excluded)
            verdict = "excluded (p=%d)" % p
        else:
            verdict = "not excluded"
        rows.append((no, v, k, lam, r, b, x, y, verdict))
    return rows
