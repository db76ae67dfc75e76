"""Defining-set search with equivalence-based pruning and JSONL persistence.

The search space at a given length is the lattice of coset-closed defining
sets. Certificate maps (multipliers, admissible shifts, the fixed monomial
transforms) partition that space into orbits; only one representative per
orbit needs a distance evaluation, and every other member inherits the
bounds along a recorded witness chain.

Evaluation is sequential in representative order, so reruns of the same job
with the same seed produce byte-identical output files; records carry work
counters instead of wall-clock times for the same reason.
"""

import json
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .constacyclic import build_constacyclic, lane_cosets
from .cosets import coset_table, units
from .cyclic import (
    _half_twist_partner,
    _odd_step_partner,
    _triple_step_partner,
    build_cyclic,
)
from .linear import min_distance, weight_distribution
from .quantum import nearly_self_orthogonal

CYCLIC_KINDS = ("multiplier", "affine", "half_twist", "odd_step",
                "triple_step")
CONSTA_KINDS = ("multiplier", "affine")
_SPOT_CHECK_CAP = 1 << 16
_MASK_CAP = 20


@dataclass(frozen=True)
class SearchJob:
    """One enumeration-and-evaluation run over defining sets at length n."""

    family: str
    n: int
    q: int = 4
    k_min: int = 0
    k_max: int | None = None
    distance_budget: int | None = None
    prune: tuple[str, ...] | None = None
    targets: tuple[tuple[int, int, int, int], ...] = ()
    output: str | None = None
    seed: int = 1
    quantum: bool = False

    def __post_init__(self):
        if self.family not in ("cyclic", "constacyclic"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if math.gcd(self.n, self.q) != 1:
            raise ValueError("length must be coprime to the field size")
        if self.family == "constacyclic":
            if self.q != 4:
                raise ValueError("constacyclic search requires q = 4")
            if self.n % 2 == 0:
                raise ValueError("constacyclic search requires odd n")
        k_max = self.n if self.k_max is None else self.k_max
        object.__setattr__(self, "k_max", k_max)
        if not 0 <= self.k_min <= k_max <= self.n:
            raise ValueError("bad dimension window")
        allowed = CYCLIC_KINDS if self.family == "cyclic" else CONSTA_KINDS
        prune = allowed if self.prune is None else tuple(self.prune)
        bad = sorted(set(prune) - set(allowed))
        if bad:
            raise ValueError(f"unknown certificate kinds for {self.family}: "
                             f"{bad}")
        object.__setattr__(self, "prune",
                           tuple(k for k in allowed if k in prune))
        if self.quantum and self.q != 4:
            raise ValueError("quantum evaluation requires q = 4")
        object.__setattr__(self, "targets",
                           tuple(tuple(int(x) for x in row)
                                 for row in self.targets))

    @property
    def modulus(self) -> int:
        return 3 * self.n if self.family == "constacyclic" else self.n


@dataclass(frozen=True)
class Orbit:
    """One certificate-closure class of defining sets."""

    orbit_id: int
    representative: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    chains: dict = field(compare=False)

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class EvalGroup:
    """Orbits sharing one distance evaluation.

    For cyclic jobs each group is a single orbit. For constacyclic jobs,
    orbits whose members are linked by admissible shifts share parameters
    (not equivalence), so they share the evaluation while keeping distinct
    orbit identities.
    """

    group_id: int
    orbit_ids: tuple[int, ...]
    eval_leaders: tuple[int, ...]
    links: dict = field(compare=False)


@dataclass(frozen=True)
class SearchRecord:
    """One defining set with its orbit context and inherited bounds."""

    family: str
    n: int
    q: int
    k: int
    leaders: tuple[int, ...]
    orbit_id: int
    orbit_size: int
    group_id: int
    representative: tuple[int, ...]
    chain: tuple
    evaluated: bool
    d_lb: int | None = None
    d_ub: int | None = None
    strategy: str | None = None
    complete: bool | None = None
    work: int = 0
    distance_via: tuple[int, ...] | None = None
    via: dict | None = None
    quantum: dict | None = None
    target_d: int | None = None
    beats_target: bool | None = None

    def to_json_dict(self) -> dict:
        return {
            "v": 1, "family": self.family, "n": self.n, "q": self.q,
            "k": self.k, "leaders": list(self.leaders),
            "orbit": self.orbit_id, "orbit_size": self.orbit_size,
            "group": self.group_id,
            "representative": list(self.representative),
            "chain": [list(step) for step in self.chain],
            "evaluated": self.evaluated, "d_lb": self.d_lb,
            "d_ub": self.d_ub, "strategy": self.strategy,
            "complete": self.complete, "work": self.work,
            "distance_via": (None if self.distance_via is None
                             else list(self.distance_via)),
            "via": self.via, "quantum": self.quantum,
            "target_d": self.target_d, "beats_target": self.beats_target,
        }


class _Space:
    """Coset structure for one job: masks, sizes, membership matrix."""

    def __init__(self, job: SearchJob):
        self.job = job
        self.modulus = job.modulus
        if job.family == "cyclic":
            self.table = coset_table(job.n, job.q)
            self.cosets = sorted(self.table.cosets, key=min)
        else:
            self.table = None
            self.cosets = sorted(lane_cosets(job.n), key=min)
        if len(self.cosets) > _MASK_CAP:
            raise ValueError(f"too many cosets ({len(self.cosets)}) "
                             f"to enumerate all defining sets")
        self.leaders = np.array([min(c) for c in self.cosets])
        self.coset_of_element = {}
        for i, c in enumerate(self.cosets):
            for x in c:
                self.coset_of_element[x] = i
        count = len(self.cosets)
        all_masks = np.arange(1 << count, dtype=np.int64)
        sizes = np.zeros(1 << count, dtype=np.int64)
        for i, c in enumerate(self.cosets):
            sizes += ((all_masks >> i) & 1) * len(c)
        lo, hi = job.n - job.k_max, job.n - job.k_min
        keep = (sizes >= lo) & (sizes <= hi)
        self.masks = all_masks[keep]
        self.sizes = sizes[keep]
        self.pos = {int(m): i for i, m in enumerate(self.masks)}
        self.membership = np.zeros((len(self.masks), self.modulus),
                                   dtype=bool)
        for i, c in enumerate(self.cosets):
            rows = ((self.masks >> i) & 1).astype(bool)
            for x in c:
                self.membership[rows, x] = True

    def mask_of_set(self, elements) -> int:
        mask = 0
        for x in elements:
            mask |= 1 << self.coset_of_element[x]
        return mask

    def set_of_mask(self, mask: int) -> frozenset:
        out = set()
        for i, c in enumerate(self.cosets):
            if mask >> i & 1:
                out.update(c)
        return frozenset(out)

    def leaders_of_mask(self, mask: int) -> tuple[int, ...]:
        return tuple(int(self.leaders[i]) for i in range(len(self.cosets))
                     if mask >> i & 1)

    def multiplier_values(self) -> tuple[int, ...]:
        if self.job.family == "cyclic":
            return units(self.job.n)
        return tuple(e for e in units(self.modulus) if e % 3 == 1)

    def multiplier_coset_perm(self, e: int) -> np.ndarray:
        return np.array([self.coset_of_element[e * int(l) % self.modulus]
                         for l in self.leaders])

    def shift_ok(self, size: int, b: int) -> bool:
        if self.job.family == "cyclic":
            return size * (self.job.q - 1) * b % self.job.n == 0
        return b % 3 == 0 and size * b % self.job.n == 0


def _union_phase(space: _Space, job: SearchJob):
    """Union-find closure with a spanning forest of witness edges."""
    n_nodes = len(space.masks)
    parent = list(range(n_nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest: list[tuple[int, int, tuple]] = []

    def union(a: int, b: int, step: tuple) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            forest.append((a, b, step))

    masks = space.masks
    count = len(space.cosets)

    want_mult = "multiplier" in job.prune or "affine" in job.prune
    if want_mult and n_nodes:
        for e in space.multiplier_values():
            if e == 1:
                continue
            p = space.multiplier_coset_perm(e)
            images = np.zeros_like(masks)
            for i in range(count):
                images |= ((masks >> i) & 1) << int(p[i])
            for a in np.flatnonzero(images != masks):
                b = space.pos.get(int(images[a]))
                if b is not None:
                    union(int(a), b, ("multiplier", e))

    if "affine" in job.prune and job.family == "cyclic" and n_nodes:
        # every affine map factors as an admissible shift followed by a
        # multiplier, so shift edges complete the affine closure
        M = space.membership
        q, n = job.q, job.n
        for b in range(1, n):
            c = (q - 1) * b % n
            invariant = (M == np.roll(M, c, axis=1)).all(axis=1)
            divisible = (space.sizes * (q - 1) * b) % n == 0
            rows = np.flatnonzero(invariant & divisible)
            if not rows.size:
                continue
            shifted = np.roll(M[rows], b, axis=1)
            images = np.zeros(rows.size, dtype=np.int64)
            for i in range(count):
                images |= shifted[:, int(space.leaders[i])].astype(
                    np.int64) << i
            for j, a in enumerate(rows):
                if int(images[j]) != int(masks[a]):
                    t = space.pos.get(int(images[j]))
                    if t is not None:
                        union(int(a), t, ("shift", b))

    transform_kinds = [k for k in ("half_twist", "odd_step", "triple_step")
                       if k in job.prune]
    if transform_kinds and job.family == "cyclic":
        n, q = job.n, job.q
        enabled = {
            "half_twist": n % 8 == 0 and q % 2 == 1,
            "odd_step": n % 8 == 0 and q % 4 == 1,
            "triple_step": q == 4 and n % 2 == 1 and n % 27 == 0,
        }
        if any(enabled[k] for k in transform_kinds):
            for a in range(n_nodes):
                S = space.set_of_mask(int(masks[a]))
                for kind in transform_kinds:
                    if not enabled[kind]:
                        continue
                    if kind == "half_twist":
                        T = _half_twist_partner(S, n)
                    elif kind == "odd_step":
                        T = _odd_step_partner(S, n)
                    else:
                        T = _triple_step_partner(S, n, space.table)
                    if T is not None and T != S:
                        t = space.pos.get(space.mask_of_set(T))
                        if t is not None:
                            union(a, t, (kind,))

    roots: dict[int, list[int]] = {}
    for i in range(n_nodes):
        roots.setdefault(find(i), []).append(i)
    return roots, forest


def _invert_step(step: tuple, modulus: int) -> tuple:
    if step[0] == "multiplier":
        return ("multiplier", pow(step[1], -1, modulus))
    if step[0] == "shift":
        return ("shift", (modulus - step[1]) % modulus)
    return step


def apply_step(job: SearchJob, elements: frozenset, step: tuple) -> frozenset:
    """Apply one witness step to a defining set."""
    m = job.modulus
    kind = step[0]
    if kind == "multiplier":
        return frozenset(step[1] * x % m for x in elements)
    if kind == "shift":
        return frozenset((x + step[1]) % m for x in elements)
    if kind == "half_twist":
        return _half_twist_partner(elements, job.n)
    if kind == "odd_step":
        return _odd_step_partner(elements, job.n)
    if kind == "triple_step":
        return _triple_step_partner(elements, job.n,
                                    coset_table(job.n, job.q))
    raise ValueError(f"unknown step kind {kind!r}")


def apply_chain(job: SearchJob, elements: frozenset, chain) -> frozenset:
    for step in chain:
        elements = apply_step(job, elements, tuple(step))
    return elements


def enumerate_orbits(job: SearchJob) -> list[Orbit]:
    """All admissible defining sets grouped into certificate orbits.

    Returns orbits sorted by their lexicographically-least leader list;
    every member carries a witness chain back to the representative.
    """
    space = _Space(job)
    roots, forest = _union_phase(space, job)

    adjacency: dict[int, list[tuple[int, tuple]]] = {}
    for a, b, step in forest:
        adjacency.setdefault(a, []).append((b, step))
        adjacency.setdefault(b, []).append((a, _invert_step(step,
                                                            space.modulus)))

    orbits = []
    for members in roots.values():
        by_leaders = sorted(
            (space.leaders_of_mask(int(space.masks[i])), i)
            for i in members)
        rep_leaders, rep_pos = by_leaders[0]
        chains: dict[tuple[int, ...], tuple] = {rep_leaders: ()}
        seen = {rep_pos}
        frontier = [rep_pos]
        chain_at = {rep_pos: ()}
        while frontier:
            nxt = []
            for u in frontier:
                for v, step in sorted(adjacency.get(u, ()),
                                      key=lambda t: (t[1], t[0])):
                    if v in seen:
                        continue
                    seen.add(v)
                    # step maps u's set to v's set; prepend the inverse so
                    # the stored chain maps v back toward the representative
                    chain_at[v] = ((_invert_step(step, space.modulus),)
                                   + chain_at[u])
                    nxt.append(v)
            frontier = nxt
        assert len(seen) == len(members), "witness forest missed a member"
        for leaders, i in by_leaders:
            chains[leaders] = chain_at[i]
        orbits.append((rep_leaders,
                       tuple(l for l, _ in by_leaders), chains))
    orbits.sort(key=lambda t: t[0])
    out = [Orbit(i, rep, members, chains)
           for i, (rep, members, chains) in enumerate(orbits)]
    assert sum(o.size for o in out) == len(space.masks), \
        "orbit sizes do not add up to the admissible-set count"
    return out


def group_orbits(job: SearchJob, orbits: list[Orbit]) -> list[EvalGroup]:
    """Bundle orbits that share parameters into evaluation groups.

    Cyclic orbits stand alone. Constacyclic orbits joined by an admissible
    shift have equal weight distributions without being equivalent, so they
    share an evaluation; the link records the witness shift.
    """
    if job.family == "cyclic" or "affine" not in job.prune:
        return [EvalGroup(i, (o.orbit_id,), o.representative,
                          {o.orbit_id: None})
                for i, o in enumerate(orbits)]

    space = _Space(job)
    owner = {}
    for o in orbits:
        for leaders in o.members:
            owner[leaders] = o.orbit_id
    by_id = {o.orbit_id: o for o in orbits}

    parent = {o.orbit_id: o.orbit_id for o in orbits}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    links: dict[int, dict | None] = {o.orbit_id: None for o in orbits}
    m = space.modulus
    for o in orbits:
        rep_set = set()
        for l in o.representative:
            rep_set.update(space.cosets[space.coset_of_element[l]])
        size = len(rep_set)
        for b in range(3, m, 3):
            if not space.shift_ok(size, b):
                continue
            T = frozenset((x + b) % m for x in rep_set)
            if any(4 * x % m not in T for x in T):
                continue
            t_leaders = tuple(sorted(min(space.cosets[i])
                                     for i in {space.coset_of_element[x]
                                               for x in T}))
            target = owner.get(t_leaders)
            if target is None or find(target) == find(o.orbit_id):
                continue
            ra, rb = find(o.orbit_id), find(target)
            parent[max(ra, rb)] = min(ra, rb)
            links[target] = {"kind": "shift", "b": b,
                             "from": list(o.representative),
                             "image": list(t_leaders)}

    grouped: dict[int, list[int]] = {}
    for o in orbits:
        grouped.setdefault(find(o.orbit_id), []).append(o.orbit_id)
    out = []
    for gid, (root, ids) in enumerate(sorted(grouped.items())):
        ids = tuple(sorted(ids))
        out.append(EvalGroup(gid, ids, by_id[ids[0]].representative,
                             {i: links[i] for i in ids}))
    return out


def _expand_leaders(job: SearchJob, leaders) -> frozenset:
    if job.family == "cyclic":
        table = coset_table(job.n, job.q)
        return frozenset(table.closure(leaders))
    want = set(int(x) for x in leaders)
    out = set()
    for c in lane_cosets(job.n):
        if min(c) in want:
            out.update(c)
            want.discard(min(c))
    if want:
        raise ValueError(f"unknown leaders: {sorted(want)}")
    return frozenset(out)


def _build_base(job: SearchJob, elements: frozenset):
    if job.family == "cyclic":
        return build_cyclic(job.n, job.q, elements).base
    return build_constacyclic(job.n, elements).base


def _targets_lookup(job: SearchJob) -> dict[tuple[int, int, int], int]:
    best: dict[tuple[int, int, int], int] = {}
    for n, k, q, d in job.targets:
        key = (n, k, q)
        if d > best.get(key, 0):
            best[key] = d
    return best


def evaluate(job: SearchJob, leaders) -> SearchRecord:
    """Build one representative and compute its distance bounds."""
    leaders = tuple(sorted(int(x) for x in leaders))
    elements = _expand_leaders(job, leaders)
    base = _build_base(job, elements)
    res = min_distance(base, budget=job.distance_budget, seed=job.seed)
    qdict = None
    if job.quantum:
        _, qp = nearly_self_orthogonal(base, budget=job.distance_budget,
                                       seed=job.seed)
        qdict = qp.to_dict()
    k = base.k
    target = _targets_lookup(job).get((job.n, k, job.q))
    return SearchRecord(
        family=job.family, n=job.n, q=job.q, k=k, leaders=leaders,
        orbit_id=-1, orbit_size=1, group_id=-1, representative=leaders,
        chain=(), evaluated=True, d_lb=res.lb, d_ub=res.ub,
        strategy=res.strategy, complete=res.complete, work=res.work,
        quantum=qdict, target_d=target,
        beats_target=None if target is None else res.lb > target)


def _spot_check(job: SearchJob, orbits: list[Orbit]) -> None:
    """Sampled-orbit invariant: members share [n,k] and weight distribution."""
    rng = random.Random(job.seed)
    feasible = []
    for o in orbits:
        if o.size < 2:
            continue
        k = job.n - len(_expand_leaders(job, o.representative))
        if 0 < k and job.q ** k <= _SPOT_CHECK_CAP:
            feasible.append(o)
    if not feasible:
        return
    o = rng.choice(feasible)
    other = rng.choice(o.members[1:])
    c1 = _build_base(job, _expand_leaders(job, o.representative))
    c2 = _build_base(job, _expand_leaders(job, other))
    assert c1.k == c2.k, "orbit members disagree on dimension"
    w1 = weight_distribution(c1)
    w2 = weight_distribution(c2)
    assert w1 == w2, "orbit members disagree on weight distribution"


def search(job: SearchJob) -> tuple[list[SearchRecord], dict]:
    """Run the full pipeline: enumerate, group, evaluate, persist, report.

    Distance evaluation runs only when the job carries a distance budget;
    otherwise records report orbit structure with null bounds.
    """
    orbits = enumerate_orbits(job)
    groups = group_orbits(job, orbits)
    _spot_check(job, orbits)

    group_of_orbit = {}
    for g in groups:
        for oid in g.orbit_ids:
            group_of_orbit[oid] = g

    evaluations: dict[int, SearchRecord | None] = {}
    for g in groups:
        if job.distance_budget is None and not job.quantum:
            evaluations[g.group_id] = None
        else:
            evaluations[g.group_id] = evaluate(job, g.eval_leaders)

    lookup = _targets_lookup(job)
    records: list[SearchRecord] = []
    for o in orbits:
        g = group_of_orbit[o.orbit_id]
        ev = evaluations[g.group_id]
        k = job.n - len(_expand_leaders(job, o.representative))
        for leaders in o.members:
            evaluated = ev is not None and leaders == g.eval_leaders
            target = lookup.get((job.n, k, job.q))
            rec = SearchRecord(
                family=job.family, n=job.n, q=job.q, k=k, leaders=leaders,
                orbit_id=o.orbit_id, orbit_size=o.size,
                group_id=g.group_id, representative=o.representative,
                chain=o.chains[leaders], evaluated=evaluated,
                d_lb=None if ev is None else ev.d_lb,
                d_ub=None if ev is None else ev.d_ub,
                strategy=ev.strategy if evaluated else None,
                complete=None if ev is None else ev.complete,
                work=ev.work if evaluated else 0,
                distance_via=(None if ev is None or evaluated
                              else g.eval_leaders),
                via=g.links.get(o.orbit_id),
                quantum=ev.quantum if evaluated else None,
                target_d=target,
                beats_target=(None if ev is None or target is None
                              else ev.d_lb > target))
            records.append(rec)

    if job.output:
        with open(job.output, "w") as fh:
            for rec in records:
                fh.write(json.dumps(rec.to_json_dict(), sort_keys=True,
                                    separators=(",", ":")) + "\n")

    return records, report(records, job.targets)


def report(records: list[SearchRecord], targets=()) -> dict:
    """Summarize a record stream; improvements require a lower-bound win."""
    total = len(records)
    orbit_ids = {r.orbit_id for r in records}
    group_ids = {r.group_id for r in records}
    evaluated = sum(1 for r in records if r.evaluated)
    incomplete = sum(1 for r in records if r.evaluated and r.complete is False)
    improvements = [
        {"leaders": list(r.leaders), "n": r.n, "k": r.k, "q": r.q,
         "d_lb": r.d_lb, "target_d": r.target_d}
        for r in records
        if r.evaluated and r.beats_target
    ]
    factor = None
    if evaluated:
        factor = round(total / evaluated, 4)
    return {
        "total_sets": total,
        "orbit_count": len(orbit_ids),
        "group_count": len(group_ids),
        "evaluated": evaluated,
        "incomplete": incomplete,
        "pruning_factor": factor,
        "improvements": improvements,
    }


def load_targets(path: str) -> tuple[tuple[int, int, int, int], ...]:
    """Read a best-known-distance table of comma-separated n,k,q,d rows."""
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [int(x) for x in line.split(",")]
            if len(parts) != 4:
                raise ValueError(f"bad targets row: {line!r}")
            rows.append(tuple(parts))
    return tuple(rows)
