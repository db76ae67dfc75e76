"""Omega-constacyclic codes over GF(4) and their equivalence criteria.

A length-n code is omega-constacyclic when (w*a_{n-1}, a_0, ..., a_{n-2})
lies in the code whenever (a_0, ..., a_{n-1}) does, with w a primitive cube
root of unity.  Such a code is an ideal in GF(4)[x]/(x^n - w) and is pinned
down by the set of exponents i with g(delta^i) = 0, where delta is a fixed
3n-th root of unity with delta^n = w.  Those exponents all sit in the
residue class 1 mod 3 inside Z/3nZ and form a union of 4-cyclotomic cosets.
"""

import math
from dataclasses import dataclass, field

from .cosets import (
    DefiningSet,
    apply_map,
    coset_table,
    enumerate_affine_witnesses,
    multiplier,
    shift_divisibility_constacyclic,
)
from .cyclic import (
    CyclicCertificate,
    CyclicCode,
    RootContext,
    build_cyclic,
    canonical_root,
    poly_divmod,
    poly_mul,
)
from .fields import GF4_OMEGA, GF4_OMEGA2, gf4
from .linear import (
    LinearCode,
    MonomialTransform,
    apply_monomial,
    weight_distribution,
)

_CONJ = {0: 0, 1: 1, GF4_OMEGA: GF4_OMEGA2, GF4_OMEGA2: GF4_OMEGA}
_WD_CAP = 1 << 16


@dataclass(frozen=True)
class ConstacyclicCode:
    """A constacyclic code over GF(4) with shift constant w or w^2."""

    n: int
    shift_constant: int
    defining_set: DefiningSet
    generator_poly: tuple[int, ...]
    base: LinearCode = field(compare=False)
    root: RootContext = field(compare=False, repr=False)

    @property
    def k(self) -> int:
        return self.n - len(self.defining_set.elements)

    @property
    def lane(self) -> int:
        """Residue class mod 3 of the defining-set exponents (1 or 2)."""
        return 1 if self.shift_constant == GF4_OMEGA else 2

    def __repr__(self) -> str:
        eta = "w" if self.shift_constant == GF4_OMEGA else "w^2"
        return (f"ConstacyclicCode(n={self.n}, k={self.k}, eta={eta}, "
                f"A={list(self.defining_set.elements)})")


def lane_cosets(n: int) -> list[tuple[int, ...]]:
    """The 4-cyclotomic cosets mod 3n lying in the residue class 1 mod 3."""
    table = coset_table(3 * n, 4)
    return [c for c in table.cosets if c[0] % 3 == 1]


def all_lane_defining_sets(n: int):
    """Yield every omega-constacyclic defining set at length n, sorted."""
    cosets = lane_cosets(n)
    if len(cosets) > 20:
        raise ValueError(f"{len(cosets)} cosets is too many to enumerate")
    for mask in range(1 << len(cosets)):
        els = []
        for i, c in enumerate(cosets):
            if mask >> i & 1:
                els.extend(c)
        yield tuple(sorted(els))


def _coerce_lane_set(n: int, A, lane: int = 1) -> DefiningSet:
    if not isinstance(A, DefiningSet):
        A = DefiningSet(3 * n, 4, tuple(sorted(int(a) % (3 * n) for a in A)))
    if A.n != 3 * n or A.q != 4:
        raise ValueError(f"defining set must live in Z/{3 * n}Z with q=4")
    if any(a % 3 != lane for a in A.elements):
        raise ValueError(
            f"defining-set exponents must be {lane} mod 3, got {A.elements}")
    return A


def build_constacyclic(n: int, A) -> ConstacyclicCode:
    """Construct the omega-constacyclic code with defining set A.

    A lives in Z/3nZ, inside the residue class 1 mod 3, and must be a
    union of 4-cyclotomic cosets.  The generator polynomial is the product
    of (x - delta^i) over i in A, with delta the canonical 3n-th root of
    unity satisfying delta^n = w.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"length must be a positive odd integer, got {n}")
    A = _coerce_lane_set(n, A)
    ctx = canonical_root(3 * n, 4)
    F = gf4()
    g_ext = [1]
    for i in A.elements:
        g_ext = poly_mul(ctx.ext, g_ext, [ctx.ext.neg(ctx.alpha_pow(i)), 1])
    gen = tuple(ctx.fwd.index(c) for c in g_ext)
    # g must divide x^n - w  (note -w = w in characteristic 2)
    xnw = [GF4_OMEGA] + [0] * (n - 1) + [1]
    _, rem = poly_divmod(F, xnw, list(gen))
    if rem != [0]:
        raise AssertionError(f"generator does not divide x^{n} - w for A={A.elements}")
    k = n - len(A.elements)
    rows = [[0] * i + list(gen) + [0] * (k - 1 - i) for i in range(k)]
    base = LinearCode.from_rows(F, rows, n)
    if base.k != k:
        raise AssertionError("generator rows are not independent")
    return ConstacyclicCode(n=n, shift_constant=GF4_OMEGA, defining_set=A,
                            generator_poly=gen, base=base, root=ctx)


def isometry_note(C: ConstacyclicCode) -> str | None:
    """Report-level note for lengths coprime to 3 (no construction here)."""
    if math.gcd(C.n, 3) == 1:
        return ("length is coprime to 3, so this code is isometric to a "
                "cyclic code of the same length")
    return None


# ---------------------------------------------------------------------------
# conjugation


def conjugate_code(C: ConstacyclicCode) -> ConstacyclicCode:
    """Entrywise squaring: swaps the shift constant w <-> w^2.

    Roots get squared along with the coefficients, so the defining set of
    the image is 2A mod 3n, living in the opposite residue class mod 3.
    """
    n = C.n
    m = 3 * n
    new_els = tuple(sorted(2 * a % m for a in C.defining_set.elements))
    new_set = DefiningSet(m, 4, new_els)
    new_gen = tuple(_CONJ[c] for c in C.generator_poly)
    new_eta = _CONJ[C.shift_constant]
    F = gf4()
    xne = [new_eta] + [0] * (n - 1) + [1]
    _, rem = poly_divmod(F, xne, list(new_gen))
    assert rem == [0], "conjugated generator does not divide its length polynomial"
    return ConstacyclicCode(n=n, shift_constant=new_eta, defining_set=new_set,
                            generator_poly=new_gen, base=C.base.conjugate(),
                            root=C.root)


# ---------------------------------------------------------------------------
# the substitution x -> x^e


def power_substitution_transform(n: int, e: int) -> MonomialTransform:
    """Coordinate action of f(x) -> f(x^e) mod (x^n - w).

    x^(e*i) reduces to w^s * x^r with e*i = s*n + r, so position i moves to
    position e*i mod n and picks up the cube-root factor w^(s mod 3).
    """
    perm = tuple(e * i % n for i in range(n))
    diag = [1] * n
    for i in range(n):
        s, r = divmod(e * i, n)
        diag[r] = gf4().pow(GF4_OMEGA, s % 3)
    return MonomialTransform(perm=perm, diagonal=tuple(diag))


def power_substitution(C: ConstacyclicCode, e: int) -> ConstacyclicCode:
    """The monomially equivalent code f(x) -> f(x^e) mod (x^n - w).

    Requires e = 1 mod 3 and gcd(3n, e) = 1.  The image defining set is
    the multiplier image of A by e^-1 mod 3n; for n <= 9 the derived
    coordinate map is re-validated against the codes themselves.
    """
    if C.shift_constant != GF4_OMEGA:
        raise ValueError("apply conjugate_code first: substitution is set up "
                         "for shift constant w")
    m = 3 * C.n
    if e % 3 != 1:
        raise ValueError(f"substitution exponent must be 1 mod 3, got {e}")
    if math.gcd(e, m) != 1:
        raise ValueError(f"substitution exponent must be a unit mod {m}")
    inv_e = pow(e, -1, m)
    image_els = apply_map(multiplier(m, inv_e), C.defining_set)
    image = build_constacyclic(C.n, DefiningSet(m, 4, image_els))
    if C.n <= 9:
        T = power_substitution_transform(C.n, e)
        assert apply_monomial(C.base, T) == image.base, (
            "derived substitution map disagrees with the codes")
    return image


# ---------------------------------------------------------------------------
# same-parameters certificates (not equivalences)


def _wd_note(C1: ConstacyclicCode, C2: ConstacyclicCode) -> str:
    if 4 ** C1.k <= _WD_CAP:
        w1 = weight_distribution(C1.base).counts
        w2 = weight_distribution(C2.base).counts
        assert w1 == w2, "same-parameters certificate with unequal weights"
        return "weight distributions compared equal"
    return "parameters asserted by the shift divisibility rule"


def shift_same_parameters(C1: ConstacyclicCode, C2: ConstacyclicCode,
                          j: int) -> CyclicCertificate | None:
    """Certificate that C1 and C2 share [n,k,d] via the shift by 3j.

    Valid when adding 3j mod 3n carries the defining set of C1 onto that
    of C2 and n divides 3j*|A1|.  This certifies equal parameters only;
    the codes need not be equivalent.
    """
    n = C1.n
    if not 1 <= j <= n:
        raise ValueError(f"shift index must satisfy 1 <= j <= {n}, got {j}")
    if C2.n != n or C2.shift_constant != C1.shift_constant:
        return None
    m = 3 * n
    b = 3 * j % m
    A1 = C1.defining_set.elements
    if not shift_divisibility_constacyclic(n, len(A1), 3 * j):
        return None
    image = tuple(sorted((a + b) % m for a in A1))
    if image != C2.defining_set.elements:
        return None
    return CyclicCertificate(
        kind="same_parameters", params=("shift", b), source=A1,
        target=C2.defining_set.elements, verified=True, transform=None,
        note=_wd_note(C1, C2))


def affine_same_parameters(C1: ConstacyclicCode,
                           C2: ConstacyclicCode) -> list[CyclicCertificate]:
    """All affine maps x -> ex + 3j certifying equal parameters.

    Side conditions: e = 1 mod 3, gcd(3n, e) = 1, and n | 3j*|A1|.
    """
    if C2.n != C1.n or C2.shift_constant != C1.shift_constant:
        return []
    witnesses = enumerate_affine_witnesses(C1.defining_set, C2.defining_set,
                                           mode="constacyclic")
    if not witnesses:
        return []
    note = _wd_note(C1, C2)
    out = []
    for w in witnesses:
        e, b = w.params
        out.append(CyclicCertificate(
            kind="same_parameters", params=("affine", e, b),
            source=C1.defining_set.elements,
            target=C2.defining_set.elements,
            verified=True, transform=None, note=note))
    return out


def affine_partner_sets(C: ConstacyclicCode) -> dict[tuple[int, ...],
                                                     list[tuple[int, int]]]:
    """All coset-closed defining sets reachable from C by a qualifying affine map.

    Keys are the image element tuples (the code's own set appears under the
    identity); values list the (e, b) pairs realizing each image.
    """
    n = C.n
    m = 3 * n
    A = C.defining_set.elements
    size = len(A)
    out: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for e in range(1, m, 3):
        if math.gcd(e, m) != 1:
            continue
        for b in range(0, m, 3):
            if size * b % n:
                continue
            image = tuple(sorted((e * a + b) % m for a in A))
            if any(4 * x % m not in image for x in image):
                continue
            out.setdefault(image, []).append((e, b))
    return out


# ---------------------------------------------------------------------------
# multiplier classification (coprime-totient lengths)


@dataclass(frozen=True)
class MultiplierOrbit:
    """One orbit of defining sets under the 1-mod-3 multipliers."""

    leader: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    witnesses: dict  # member -> e with multiplier e carrying leader to member

    def __len__(self) -> int:
        return len(self.members)


def _totient(m: int) -> int:
    return sum(1 for i in range(1, m + 1) if math.gcd(i, m) == 1)


def palfy_classify(n: int) -> list[MultiplierOrbit]:
    """Partition all length-n defining sets into multiplier orbits.

    Requires gcd(3n, phi(3n)) = 1.  In that range, codes-with-shared-orbit
    are exactly the isometrically (monomially) equivalent ones: the
    multiplier action is realized on codewords by the power substitution,
    whose coordinate map carries cube-root scale factors.  Any two codes
    equivalent by a bare coordinate permutation always share an orbit, but
    an orbit may join codes that no scale-free permutation links (n=5,
    {1,4} vs {7,13} is such a pair).
    """
    m = 3 * n
    if math.gcd(m, _totient(m)) != 1:
        raise ValueError(f"classification needs gcd(3n, phi(3n)) = 1 at n={n}")
    mults = [e for e in range(1, m, 3) if math.gcd(e, m) == 1]
    sets = sorted(all_lane_defining_sets(n))
    unseen = set(sets)
    orbits = []
    for A in sets:  # already in lexicographic order
        if A not in unseen:
            continue
        members = {}
        for e in mults:
            image = tuple(sorted(e * a % m for a in A))
            if image not in members:
                members[image] = e
        for im in members:
            unseen.discard(im)
        ordered = tuple(sorted(members))
        orbits.append(MultiplierOrbit(leader=A, members=ordered,
                                      witnesses=dict(members)))
    return orbits


# ---------------------------------------------------------------------------
# the length-3n cyclic container


def embed_as_cyclic(C: ConstacyclicCode) -> CyclicCode:
    """The cyclic code of length 3n with the same defining set.

    x^n - eta divides x^3n - 1, so A also cuts out a cyclic code; its
    parity rows at exponent a factor into the three blocks
    [H1 | w^a H1 | w^2a H1] over the constacyclic parity rows H1.
    """
    return build_cyclic(3 * C.n, 4, C.defining_set)
