"""Permutations and small dense permutation groups on {1..v}.

Groups are stored as complete element lists (orders up to a few thousand),
which keeps every orbit/stabilizer question exact and allows the bitmask
tricks used by the subset generators: for a set U of points, ``mask(U)`` has
bit p-1 set for each point p, and the lexicographic order on sorted subsets
of equal size coincides with "the smallest point of the symmetric difference
lies in the smaller set", so set comparisons are three integer operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class GroupTooLargeError(ValueError):
    """Raised when generator closure exceeds the dense-representation bound."""


DEFAULT_CLOSURE_BOUND = 10_000


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << (p - 1)
    return m


def points_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def mask_less(a: int, b: int) -> bool:
    """a < b in sorted-sequence lexicographic order, for equal-size sets.

    The first index where the sorted sequences differ is the smallest point
    of the symmetric difference; it belongs to the smaller set.
    """
    x = a ^ b
    return x != 0 and (x & -x) & a != 0


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..v}; images[i-1] is the image of point i."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        v = len(self.images)
        if sorted(self.images) != list(range(1, v + 1)):
            raise ValueError("images do not form a bijection of {1..%d}" % v)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, v: int) -> "Permutation":
        return cls(tuple(range(1, v + 1)))

    @classmethod
    def from_cycles(cls, v: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        images = list(range(1, v + 1))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + type(cyc)([cyc[0]])):
                images[a - 1] = b
        return cls(tuple(images))

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(p) = self(other(p))."""
        return Permutation(tuple(self.images[q - 1] for q in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, q in enumerate(self.images):
            inv[q - 1] = i + 1
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(q == i + 1 for i, q in enumerate(self.images))

    def order(self) -> int:
        n = 1
        g = self
        while not g.is_identity():
            g = g * self
            n += 1
        return n

    def apply_mask(self, mask: int) -> int:
        out = 0
        while mask:
            low = mask & -mask
            out |= 1 << (self.images[low.bit_length() - 1] - 1)
            mask ^= low
        return out

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, q in enumerate(self.images) if q == i + 1)

    def cycle_string(self) -> str:
        seen = set()
        parts = []
        for i in range(1, len(self.images) + 1):
            if i in seen or self.images[i - 1] == i:
                continue
            cyc = [i]
            j = self.images[i - 1]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j - 1]
            parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts) or "()"


@dataclass
class OrbitPartition:
    """Point orbits of a group, as sorted tuples covering {1..v}."""

    point_orbits: list[tuple[int, ...]]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.point_orbits)

    def masks(self) -> list[int]:
        return [mask_of(o) for o in self.point_orbits]


class PermGroup:
    """A permutation group given by its full element list.

    Elements are closed under composition and inverse; the identity is
    always elements[0].
    """

    def __init__(self, degree: int, generators: list[Permutation],
                 elements: list[Permutation]):
        self.degree = degree
        self.generators = generators
        ident = Permutation.identity(degree)
        rest = sorted((g for g in elements if not g.is_identity()),
                      key=lambda g: g.images)
        self.elements = [ident] + rest
        self.order = len(self.elements)
        self._element_set = frozenset(g.images for g in self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g.images in self._element_set

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def nonidentity(self) -> list[Permutation]:
        return self.elements[1:]

    @classmethod
    def trivial(cls, v: int) -> "PermGroup":
        e = Permutation.identity(v)
        return cls(v, [], [e])

    def point_orbits(self) -> OrbitPartition:
        seen = [False] * (self.degree + 1)
        orbits = []
        for p in range(1, self.degree + 1):
            if seen[p]:
                continue
            orb = sorted({g(p) for g in self.elements})
            for q in orb:
                seen[q] = True
            orbits.append(tuple(orb))
        return OrbitPartition(orbits)

    def conjugate_subgroup(self, sub: "PermGroup", g: Permutation) -> "PermGroup":
        ginv = g.inverse()
        elems = [g * h * ginv for h in sub.elements]
        gens = [g * h * ginv for h in sub.generators]
        return PermGroup(self.degree, gens, elems)

    def element_key(self) -> frozenset:
        return self._element_set


def close_generators(gens: list[Permutation],
                     bound: int = DEFAULT_CLOSURE_BOUND) -> PermGroup:
    """Dense closure of a generating set, with an order safety bound."""
    if not gens:
        raise ValueError("need at least one generator (or use PermGroup.trivial)")
    v = gens[0].degree
    if any(g.degree != v for g in gens):
        raise ValueError("generators have mixed degrees")
    ident = Permutation.identity(v)
    elems = {ident.images: ident}
    frontier = [ident]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = g * a
                if c.images not in elems:
                    if len(elems) >= bound:
                        raise GroupTooLargeError(
                            "group too large for dense closure (bound %d)" % bound)
                    elems[c.images] = c
                    new.append(c)
        frontier = new
    return PermGroup(v, list(gens), list(elems.values()))


def orbit_of_set(group: PermGroup, points: Iterable[int]) -> list[tuple[int, ...]]:
    """All distinct images gU, sorted lexicographically as sorted tuples."""
    masks = {g.apply_mask(mask_of(points)) for g in group.elements}
    return sorted(points_of(m) for m in masks)


def min_image_mask(group: PermGroup, mask: int) -> int:
    best = mask
    for g in group.elements[1:]:
        m = g.apply_mask(mask)
        if mask_less(m, best):
            best = m
    return best


def min_image(group: PermGroup, points: Iterable[int]) -> tuple[int, ...]:
    """The lexicographically minimal element of the orbit of a point set."""
    return points_of(min_image_mask(group, mask_of(points)))


def is_minimal(group: PermGroup, points: Iterable[int]) -> bool:
    mask = mask_of(points)
    for g in group.elements[1:]:
        if mask_less(g.apply_mask(mask), mask):
            return False
    return True


def set_stabilizer_order(group: PermGroup, points: Iterable[int]) -> int:
    mask = mask_of(points)
    return sum(1 for g in group.elements if g.apply_mask(mask) == mask)


def construct_frob21_action(dist: Sequence[int]) -> PermGroup:
    """The Frobenius group of order 21 acting with the given orbit sizes.

    Entries of ``dist`` must be 7 (coset action on the order-3 subgroup:
    one fixed point and two 3-cycles for each order-3 element) or 21
    (regular action, fixed-point-free throughout).  The action with a given
    size distribution is unique up to permutational isomorphism.
    """
    if any(d not in (7, 21) for d in dist):
        raise ValueError("orbit sizes must be 7 or 21, got %r" % (dist,))
    # Abstract Frob21 = <s, t | s^7, t^3, t s t^-1 = s^2> as words (i, j)
    # meaning s^i t^j, 0 <= i < 7, 0 <= j < 3.  Multiplication uses
    # t^j s = s^(2^j) t^j.
    def mul(a, b):
        i1, j1 = a
        i2, j2 = b
        return ((i1 + i2 * pow(2, j1, 7)) % 7, (j1 + j2) % 3)

    elems = [(i, j) for i in range(7) for j in range(3)]
    # Transitive pieces: for each element of the group, its action on the
    # points of each orbit by left multiplication on cosets.
    sgen = (1, 0)
    tgen = (0, 1)
    s_images: list[int] = []
    t_images: list[int] = []
    offset = 0
    for d in dist:
        if d == 21:
            cosets = [(e,) for e in elems]  # trivial subgroup
            members = {e: idx for idx, (e,) in enumerate(cosets)}

            def act(g, idx, members=members, cosets=cosets):
                return members[mul(g, cosets[idx][0])]
        else:
            # cosets of T = <t>
            tsub = [(0, 0), (0, 1), (0, 2)]
            cosets = []
            seen = set()
            for e in elems:
                coset = frozenset(mul(e, h) for h in tsub)
                if coset not in seen:
                    seen.add(coset)
                    cosets.append(coset)
            members = {}
            for idx, coset in enumerate(cosets):
                for e in coset:
                    members[e] = idx

            def act(g, idx, members=members, cosets=cosets):
                rep = next(iter(cosets[idx]))
                return members[mul(g, rep)]

        for idx in range(d):
            s_images.append(offset + act(sgen, idx) + 1)
            t_images.append(offset + act(tgen, idx) + 1)
        offset += d

    group = close_generators([Permutation(tuple(s_images)),
                              Permutation(tuple(t_images))])
    assert group.order == 21
    return group


def cyclic_group(v: int, cycle: Sequence[int] | None = None) -> PermGroup:
    """Cyclic group generated by one cycle (default: the full v-cycle)."""
    cyc = list(cycle) if cycle is not None else list(range(1, v + 1))
    return close_generators([Permutation.from_cycles(v, [cyc])])


def _subgroup_key(elements: Iterable[Permutation]) -> frozenset:
    return frozenset(g.images for g in elements)


def all_subgroups(group: PermGroup) -> list[PermGroup]:
    """Every subgroup, by closure of cyclic subgroups under element extension."""
    v = group.degree
    ident = Permutation.identity(v)
    subgroups: dict[frozenset, PermGroup] = {}
    triv = PermGroup(v, [], [ident])
    subgroups[_subgroup_key([ident])] = triv
    frontier = [triv]
    while frontier:
        new = []
        for sub in frontier:
            have = sub.element_key()
            for x in group.elements[1:]:
                if x.images in have:
                    continue
                ext = _close_within(group, sub.elements, x)
                key = _subgroup_key(ext)
                if key not in subgroups:
                    gens = sub.generators + [x]
                    k = PermGroup(v, gens, ext)
                    subgroups[key] = k
                    new.append(k)
        frontier = new
    return sorted(subgroups.values(), key=lambda s: (s.order, sorted(g.images for g in s.elements)))


def _close_within(group: PermGroup, base: list[Permutation],
                  x: Permutation) -> list[Permutation]:
    elems = {g.images: g for g in base}
    frontier = [x]
    elems[x.images] = x
    gens = list(base) + [x]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = g * a
                if c.images not in elems:
                    elems[c.images] = c
                    new.append(c)
                if len(elems) > group.order:
                    raise AssertionError("closure escaped the parent group")
        frontier = new
        gens = list(elems.values())  # base may not generate; be safe
    return list(elems.values())


def conjugacy_classes_of_subgroups(group: PermGroup,
                                   subs: list[PermGroup] | None = None
                                   ) -> list[list[PermGroup]]:
    if subs is None:
        subs = all_subgroups(group)
    remaining = {s.element_key(): s for s in subs}
    classes = []
    while remaining:
        key, rep = next(iter(remaining.items()))
        cls = {}
        for g in group.elements:
            conj = frozenset((g * h * g.inverse()).images
                             for h in rep.elements)
            if conj in remaining:
                cls[conj] = remaining[conj]
        for k in cls:
            remaining.pop(k, None)
        classes.append(list(cls.values()))
    return classes


def subgroups_of_order(group: PermGroup, n: int) -> list[PermGroup]:
    """One representative per conjugacy class of subgroups of order n."""
    if group.order % n != 0:
        raise ValueError("%d does not divide the group order %d" % (n, group.order))
    subs = [s for s in all_subgroups(group) if s.order == n]
    return [cls[0] for cls in conjugacy_classes_of_subgroups(group, subs)]


def prime_order_subgroup_classes(group: PermGroup) -> list[PermGroup]:
    """Class representatives of subgroups of prime order (cheap: no full lattice)."""
    seen: set[frozenset] = set()
    reps: list[PermGroup] = []
    covered: set[frozenset] = set()
    for g in group.elements[1:]:
        n = g.order()
        if n < 2 or any(n % q == 0 for q in range(2, n)):
            continue
        sub_elems = [Permutation.identity(group.degree)]
        h = g
        while not h.is_identity():
            sub_elems.append(h)
            h = h * g
        key = _subgroup_key(sub_elems)
        if key in seen or key in covered:
            continue
        seen.add(key)
        reps.append(PermGroup(group.degree, [g], sub_elems))
        for c in group.elements:
            covered.add(frozenset((c * x * c.inverse()).images for x in sub_elems))
    return reps


# ---------------------------------------------------------------------------
# Group file format: line 1 "v g"; then g lines of v space-separated images.

def write_group_file(path, group: PermGroup) -> None:
    gens = group.generators or group.elements[:1]
    with open(path, "w") as fh:
        fh.write("%d %d\n" % (group.degree, len(gens)))
        for g in gens:
            fh.write(" ".join(map(str, g.images)) + "\n")


def read_group_file(path, bound: int = DEFAULT_CLOSURE_BOUND) -> PermGroup:
    with open(path) as fh:
        lines = [ln for ln in fh]
    if not lines:
        raise ValueError("%s: empty group file" % path)
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("%s:1: expected 'v g' header" % path)
    v, ngens = int(head[0]), int(head[1])
    gens = []
    for i in range(ngens):
        lineno = i + 2
        try:
            images = tuple(int(tok) for tok in lines[i + 1].split())
        except (IndexError, ValueError):
            raise ValueError("%s:%d: expected %d integers" % (path, lineno, v))
        if len(images) != v:
            raise ValueError("%s:%d: expected %d images, got %d"
                             % (path, lineno, v, len(images)))
        if sorted(images) != list(range(1, v + 1)):
            raise ValueError("%s:%d: not a bijection of {1..%d}" % (path, lineno, v))
        gens.append(Permutation(images))
    return close_generators(gens, bound=bound)
