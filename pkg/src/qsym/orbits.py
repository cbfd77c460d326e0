"""Isomorph-free generation of good orbits of k-subsets under a group.

The generator is an orderly depth-first search: a node is a sorted subset U
that is the lexicographic minimum of its orbit, and children extend U by a
point larger than max(U).  Removing the largest point of a minimal set
leaves a minimal set, so the minimal representative of every orbit is
reached exactly once.  All hot-path state lives in Python integers used as
bitsets over the points: per group element g we carry the image mask g(U)
incrementally, the minimality test "g(U) < U" is three integer operations,
and intersection sizes are popcounts.

Modes:

* ``full``      -- visit every orbit of k-subsets, emit the good ones.
* ``pruned``    -- additionally require |U' * g(U')| <= y at every proper
                   prefix U'.  A prefix violating this can only extend to a
                   good set that some g stabilizes, so the pruned run finds
                   every good orbit of full size |G| but may miss short
                   orbits; callers union it with short_good_orbits.
* ``short-only``-- stabilizer-based generation of the orbits with
                   nontrivial stabilizer (size < |G|) alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .perms import (OrbitPartition, PermGroup, mask_less, mask_of,
                    min_image_mask, points_of, prime_order_subgroup_classes)


@dataclass(frozen=True)
class OrbitRep:
    """Minimal representative of an orbit of k-subsets."""

    rep: tuple[int, ...]
    orbit_size: int
    profile: tuple[int, ...] | None = None

    @property
    def mask(self) -> int:
        return mask_of(self.rep)


@dataclass
class GenerationConfig:
    x: int
    y: int
    mode: str = "full"  # full | pruned | short-only
    column: tuple[int, ...] | None = None
    orbit_partition: OrbitPartition | None = None
    max_orbit_size: int | None = None
    resume_after: tuple[int, ...] | None = None
    partition: tuple[int, int] | None = None  # (worker, num_workers)

    def __post_init__(self) -> None:
        if self.mode not in ("full", "pruned", "short-only"):
            raise ValueError("unknown mode %r" % self.mode)
        if not (0 <= self.x < self.y):
            raise ValueError("need 0 <= x < y")
        if self.column is not None and self.orbit_partition is None:
            raise ValueError("column profile requires an orbit partition")


@dataclass
class GenStats:
    """Counters filled in while a generator runs (read after exhaustion)."""

    leaves: int = 0     # orbits visited at full depth (full mode: the census)
    good: int = 0
    nodes: int = 0


def good_orbits(group: PermGroup, k: int, config: GenerationConfig,
                stats: GenStats | None = None,
                extra_block_masks: Sequence[int] | None = None
                ) -> Iterator[OrbitRep]:
    """Stream one OrbitRep per good orbit, lexicographically by representative.

    ``extra_block_masks`` anchors the search to already-chosen blocks: every
    emitted representative (and so, by the caller feeding in whole orbits,
    every block of the emitted orbit) meets each anchor mask in x or y points.
    """
    if config.mode == "short-only":
        reps = short_good_orbits(group, k, config.x, config.y,
                                 column=config.column,
                                 orbit_partition=config.orbit_partition)
        for r in reps:
            if config.max_orbit_size and r.orbit_size > config.max_orbit_size:
                continue
            if config.resume_after and r.rep <= config.resume_after:
                continue
            yield r
        return
    yield from _orderly(group, k, config, stats or GenStats(),
                        extra_masks=extra_block_masks)


def _orderly(group: PermGroup, k: int, config: GenerationConfig,
             stats: GenStats,
             extra_masks: Sequence[int] | None = None) -> Iterator[OrbitRep]:
    v = group.degree
    x, y = config.x, config.y
    pruned = config.mode == "pruned"
    nonid = group.nonidentity()
    ng = len(nonid)
    order = group.order
    # gbits[gi][p0] = bit of the image of point p0+1 under element gi
    gbits = [[1 << (g.images[p0] - 1) for p0 in range(v)] for g in nonid]

    if config.column is not None:
        part = config.orbit_partition
        if len(config.column) != len(part.point_orbits):
            raise ValueError("column length does not match orbit partition")
        if sum(config.column) != k:
            raise ValueError("column profile must sum to k")
        orb_idx = [0] * v
        for oi, orb in enumerate(part.point_orbits):
            for p in orb:
                orb_idx[p - 1] = oi
        limits = list(config.column)
    else:
        orb_idx = None
        limits = None

    prof_masks = (config.orbit_partition.masks()
                  if config.orbit_partition is not None else None)
    extra = list(extra_masks or [])
    resume = config.resume_after
    part_cfg = config.partition
    max_size = config.max_orbit_size

    def rec(d: int, last: int, umask: int, cur_masks: list[int],
            counters: list[int] | None, on_boundary: bool,
            upath: list[int]) -> Iterator[OrbitRep]:
        if d == k:
            if on_boundary:
                return  # exactly the resume point; already emitted
            stats.leaves += 1
            nstab = 1
            for m in cur_masks:
                if m == umask:
                    nstab += 1
                else:
                    c = (m & umask).bit_count()
                    if c != x and c != y:
                        return
            for em in extra:
                c = (em & umask).bit_count()
                if c != x and c != y:
                    return
            size = order // nstab
            if max_size is not None and size > max_size:
                return
            stats.good += 1
            profile = (tuple((pm & umask).bit_count() for pm in prof_masks)
                       if prof_masks is not None else None)
            yield OrbitRep(tuple(upath), size, profile)
            return
        emax = v - (k - d - 1)
        estart = last + 1
        if on_boundary:
            estart = max(estart, resume[d])
        for e in range(estart, emax + 1):
            e0 = e - 1
            if counters is not None:
                oi = orb_idx[e0]
                if counters[oi] >= limits[oi]:
                    continue
            ebit = 1 << e0
            numask = umask | ebit
            new_masks = []
            ok = True
            if pruned:
                for gi in range(ng):
                    m = cur_masks[gi] | gbits[gi][e0]
                    xr = m ^ numask
                    if xr:
                        if (xr & -xr) & m:
                            ok = False
                            break
                        if (m & numask).bit_count() > y:
                            ok = False
                            break
                    new_masks.append(m)
            else:
                for gi in range(ng):
                    m = cur_masks[gi] | gbits[gi][e0]
                    xr = m ^ numask
                    if xr and (xr & -xr) & m:
                        ok = False
                        break
                    new_masks.append(m)
            if not ok:
                continue
            if extra:
                for em in extra:
                    if (em & numask).bit_count() > y:
                        ok = False
                        break
                if not ok:
                    continue
            stats.nodes += 1
            if part_cfg is not None and d == min(1, k - 1):
                w, nw = part_cfg
                if (umask.bit_length() * v + e) % nw != w:
                    continue
            child_boundary = on_boundary and e == resume[d]
            if on_boundary and e < resume[d]:
                continue  # unreachable given estart, kept for clarity
            if counters is not None:
                counters[oi] += 1
            upath.append(e)
            yield from rec(d + 1, e, numask, new_masks, counters,
                           child_boundary, upath)
            upath.pop()
            if counters is not None:
                counters[oi] -= 1

    counters0 = [0] * len(limits) if limits is not None else None
    boundary0 = resume is not None and len(resume) == k
    yield from rec(0, 0, 0, [0] * ng, counters0, boundary0, [])


def short_good_orbits(group: PermGroup, k: int, x: int, y: int,
                      column: tuple[int, ...] | None = None,
                      orbit_partition: OrbitPartition | None = None
                      ) -> list[OrbitRep]:
    """All good orbits of size < |G|, via sets fixed by prime-order subgroups.

    Any nontrivial set stabilizer contains a subgroup of prime order, and a
    set fixed by a conjugate of S lies in the orbit of a set fixed by S, so
    running over conjugacy-class representatives of prime-order subgroups and
    minimizing reaches every short orbit.
    """
    v = group.degree
    nonid = group.nonidentity()
    order = group.order
    if column is not None:
        if orbit_partition is None:
            raise ValueError("column profile requires an orbit partition")
        gmask = orbit_partition.masks()
        glimits = list(column)
    seen: set[int] = set()
    out: list[OrbitRep] = []
    prof_masks = orbit_partition.masks() if orbit_partition is not None else None
    for sub in prime_order_subgroup_classes(group):
        sorbits = [mask_of(o) for o in sub.point_orbits().point_orbits]
        sorbits.sort(key=lambda m: m & -m)
        sizes = [m.bit_count() for m in sorbits]
        n = len(sorbits)
        suffix = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            suffix[i] = suffix[i + 1] + sizes[i]

        def rec(i: int, remaining: int, umask: int) -> None:
            if remaining == 0:
                _consider(umask)
                return
            if i == n or suffix[i] < remaining:
                return
            if sizes[i] <= remaining:
                if column is None or _col_ok(umask | sorbits[i]):
                    rec(i + 1, remaining - sizes[i], umask | sorbits[i])
            rec(i + 1, remaining, umask)

        def _col_ok(umask: int) -> bool:
            return all((umask & gm).bit_count() <= gl
                       for gm, gl in zip(gmask, glimits))

        def _consider(umask: int) -> None:
            rep = min_image_mask(group, umask)
            if rep in seen:
                return
            seen.add(rep)
            if column is not None and not all(
                    (umask & gm).bit_count() == gl
                    for gm, gl in zip(gmask, glimits)):
                return
            nstab = 1
            for g in nonid:
                m = g.apply_mask(umask)
                if m == umask:
                    nstab += 1
                else:
                    c = (m & umask).bit_count()
                    if c != x and c != y:
                        return
            if nstab == 1:
                return  # not short; the orderly run owns it
            profile = (tuple((pm & rep).bit_count() for pm in prof_masks)
                       if prof_masks is not None else None)
            out.append(OrbitRep(points_of(rep), order // nstab, profile))

        rec(0, k, 0)
    out.sort(key=lambda r: r.rep)
    return out


def column_compatible_orbits(group: PermGroup, k: int, x: int, y: int,
                             column: Sequence[int],
                             orbit_partition: OrbitPartition,
                             orbit_size: int | None = None,
                             stats: GenStats | None = None
                             ) -> list[OrbitRep]:
    """Good orbits whose representatives meet point-orbit i in column[i] points.

    With ``orbit_size`` set, only orbits of exactly that size are returned;
    sizes below |G| come from the stabilizer generator, size |G| from the
    pruned orderly run (exact for full-size orbits).
    """
    column = tuple(column)
    cfg = GenerationConfig(x=x, y=y, mode="pruned", column=column,
                           orbit_partition=orbit_partition)
    results: dict[tuple[int, ...], OrbitRep] = {}
    if orbit_size is None or orbit_size == group.order:
        for r in good_orbits(group, k, cfg, stats=stats):
            if r.orbit_size == group.order:
                results[r.rep] = r
    if orbit_size is None or orbit_size < group.order:
        for r in short_good_orbits(group, k, x, y, column=column,
                                   orbit_partition=orbit_partition):
            if orbit_size is None or r.orbit_size == orbit_size:
                results[r.rep] = r
    return [results[key] for key in sorted(results)]


# ---------------------------------------------------------------------------
# Orbit-representative files:
#   header  "v k |G| x y mode"
#   lines   "p1 p2 ... pk | size"
#   trailer "# total=<N> good=<M>"


def write_orbit_file(path, group: PermGroup, k: int, config: GenerationConfig,
                     reps: Iterable[OrbitRep], stats: GenStats | None = None,
                     header_comments: Sequence[str] = ()) -> int:
    n = 0
    with open(path, "w") as fh:
        fh.write("%d %d %d %d %d %s\n"
                 % (group.degree, k, group.order, config.x, config.y,
                    config.mode))
        for line in header_comments:
            fh.write("# %s\n" % line)
        for r in reps:
            fh.write(" ".join(map(str, r.rep)) + " | %d\n" % r.orbit_size)
            n += 1
        if stats is not None:
            fh.write("# total=%d good=%d\n" % (stats.leaves, stats.good))
        else:
            fh.write("# total=%d good=%d\n" % (n, n))
    return n


def read_orbit_file(path) -> tuple[dict, list[OrbitRep]]:
    with open(path) as fh:
        head = fh.readline().split()
        if len(head) != 6:
            raise ValueError("%s:1: expected 'v k |G| x y mode' header" % path)
        meta = {"v": int(head[0]), "k": int(head[1]), "order": int(head[2]),
                "x": int(head[3]), "y": int(head[4]), "mode": head[5]}
        reps = []
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                if "total=" in line:
                    for tok in line[1:].split():
                        key, _, val = tok.partition("=")
                        meta[key] = int(val)
                continue
            body, _, size = line.partition("|")
            rep = tuple(int(t) for t in body.split())
            if len(rep) != meta["k"]:
                raise ValueError("%s:%d: expected %d points"
                                 % (path, lineno, meta["k"]))
            reps.append(OrbitRep(rep, int(size)))
    return meta, reps
