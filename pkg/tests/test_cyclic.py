import numpy as np
import pytest

from codeq.cosets import (
    DefiningSet,
    all_defining_sets,
    apply_map,
    coset_table,
    enumerate_affine_witnesses,
    generalized_multiplier,
    multiplier,
)
from codeq.cyclic import (
    CyclicCode,
    build_cyclic,
    block_half_twist_transform,
    canonical_root,
    certify_equivalence,
    cyclic_from_generator,
    dual_defining_set,
    extend_length,
    generalized_parity_check,
    half_twist_pair,
    half_twist_transform,
    hermitian_dual_defining_set,
    multiplier_transform,
    odd_step_pair,
    odd_step_transform,
    poly_divmod,
    triple_step_pair,
    triple_step_transform,
    classify_cyclic,
)
from codeq.fields import (
    GF4_OMEGA,
    GF4_OMEGA2,
    build_field,
    gf4,
    splitting_field,
)
from codeq.linear import (
    LinearCode,
    apply_monomial,
    brute_force_equivalence,
    min_distance,
    weight_distribution,
)


def leaders_set(n, q, leaders):
    return DefiningSet.from_leaders(n, q, leaders)


# ---------------------------------------------------------------------------
# construction


def test_build_empty_and_full():
    C = build_cyclic(8, 3, DefiningSet(8, 3, ()))
    assert C.k == 8 and C.generator_poly == (1,)
    Z = build_cyclic(8, 3, DefiningSet(8, 3, tuple(range(8))))
    assert Z.k == 0
    # x^8 - 1 over GF(3) is x^8 + 2
    assert Z.generator_poly == (2, 0, 0, 0, 0, 0, 0, 0, 1)


def test_build_51_40():
    C = build_cyclic(51, 4, leaders_set(51, 4, (0, 2, 7, 17, 34)))
    assert (C.n, C.k) == (51, 40)
    assert len(C.generator_poly) - 1 == 11


def test_generator_divides_length_polynomial():
    for n, q in ((8, 3), (9, 2), (27, 4), (15, 4)):
        ctx = canonical_root(n, q)
        F = ctx.base
        for els in all_defining_sets(n, q):
            if len(els) in (0, n):
                continue
            C = build_cyclic(n, q, DefiningSet(n, q, els))
            assert C.k == n - len(els)
            xn1 = [F.neg(1)] + [0] * (n - 1) + [1]
            _, rem = poly_divmod(F, xn1, list(C.generator_poly))
            assert rem == [0]
            break  # one nontrivial set per (n, q) keeps this quick


def test_build_rejects_open_set():
    with pytest.raises(ValueError):
        build_cyclic(8, 3, DefiningSet(8, 3, (1,)))  # {1,3} is the coset


def test_roundtrip_from_generator():
    C = build_cyclic(8, 3, leaders_set(8, 3, (0, 1, 4)))
    D = cyclic_from_generator(8, 3, list(C.generator_poly))
    assert D.defining_set.elements == C.defining_set.elements
    assert D.base == C.base


def test_shared_root_is_cached():
    assert canonical_root(51, 4) is canonical_root(51, 4)


def test_root_anchoring_gf4():
    # for GF(4) codes with 3 | n the shared root r satisfies r^(n/3) = omega
    for n in (27, 51, 15):
        ctx = canonical_root(n, 4)
        assert ctx.ext.pow(ctx.alpha, n // 3) == ctx.fwd[GF4_OMEGA]


# ---------------------------------------------------------------------------
# duals


def test_dual_defining_set_matches_linear_dual():
    for n, q in ((8, 3), (9, 2)):
        for els in all_defining_sets(n, q):
            A = DefiningSet(n, q, els)
            C = build_cyclic(n, q, A)
            D = build_cyclic(n, q, dual_defining_set(A))
            assert D.base == C.base.euclidean_dual()


def test_hermitian_dual_defining_set():
    for els in all_defining_sets(15, 4):
        A = DefiningSet(15, 4, els)
        C = build_cyclic(15, 4, A)
        D = build_cyclic(15, 4, hermitian_dual_defining_set(A))
        assert D.base == C.base.hermitian_dual()
    with pytest.raises(ValueError):
        hermitian_dual_defining_set(DefiningSet(8, 3, (0,)))


# ---------------------------------------------------------------------------
# generalized parity checks


def test_generalized_parity_check_classifies_words():
    C = build_cyclic(8, 3, leaders_set(8, 3, (1, 2)))
    H = generalized_parity_check(C)
    assert len(H.rows()) == len(C.defining_set)
    words = C.base.codewords()
    in_code = {bytes(w) for w in words}
    for w in words[:50]:
        assert H.annihilates(w)
    rng = np.random.default_rng(5)
    for _ in range(50):
        v = rng.integers(0, 3, size=8, dtype=np.uint8)
        assert H.annihilates(v) == (bytes(v) in in_code)


# ---------------------------------------------------------------------------
# the half-twist family (P_sigma D)


def test_half_twist_action_table_n8():
    F3 = build_field(3, 1)
    M = half_twist_transform(8, F3)
    # standard basis action: s0 -> s0, s1 -> -s1, s2 -> -s6, s3 -> s7
    for i, (j, sign) in {0: (0, 1), 1: (1, 2), 2: (6, 2), 3: (7, 1)}.items():
        assert M.perm[i] == j and M.diagonal[j] == sign


def test_half_twist_squares_to_identity():
    F3 = build_field(3, 1)
    for n in (8, 16, 24):
        M = half_twist_transform(n, F3)
        MM = M.compose(F3, M)
        assert MM.perm == tuple(range(n))
        assert all(d == 1 for d in MM.diagonal)


def test_half_twist_moves_parity_rows():
    # v^b P_sigma D = v^(b + n/2) for odd b, checked in the splitting field
    n = 8
    K = splitting_field(3, n)
    ctx = canonical_root(n, 3)
    M = half_twist_transform(n, build_field(3, 1))
    for b in (1, 3, 5, 7):
        vb = np.array([ctx.alpha_pow(b * i) for i in range(n)], dtype=np.uint8)
        want = np.array([ctx.alpha_pow((b + n // 2) * i) for i in range(n)],
                        dtype=np.uint8)
        got = M.apply_vector(K, vb)
        assert np.array_equal(got, want), b


def test_half_twist_requires_multiple_of_8_and_odd_char():
    with pytest.raises(ValueError):
        half_twist_transform(12, build_field(3, 1))
    with pytest.raises(ValueError):
        half_twist_transform(8, gf4())


def test_half_twist_pair_counterexample_sets():
    C1, C2, cert = half_twist_pair(8, 3, (5, 7))
    assert cert.source == (2, 5, 6, 7)
    assert cert.target == (0, 1, 3, 4)
    assert cert.verified and cert.transform is not None


def test_half_twist_pair_empty_core():
    C1, C2, cert = half_twist_pair(8, 3, ())
    assert cert.source == (2, 6)
    assert cert.target == (0, 4)
    assert cert.verified


def test_half_twist_pair_n40():
    A = leaders_set(40, 3, (1,))
    assert A.elements == (1, 3, 9, 27)
    C1, C2, cert = half_twist_pair(40, 3, A)
    assert cert.verified


def test_half_twist_pair_rejects_even_elements():
    with pytest.raises(ValueError):
        half_twist_pair(8, 3, (2, 6))


def half_twist_sweep_cases():
    for n, q in ((8, 3), (8, 7), (8, 11), (16, 3), (16, 7), (16, 11),
                 (24, 7), (24, 11)):
        table = coset_table(n, q)
        odd_cosets = [c for c in table.cosets if all(x % 2 for x in c)]
        for mask in range(1 << len(odd_cosets)):
            els = []
            for i, c in enumerate(odd_cosets):
                if mask >> i & 1:
                    els.extend(c)
            yield n, q, tuple(sorted(els))


def test_half_twist_theorem_sweep():
    count = 0
    for n, q, els in half_twist_sweep_cases():
        _, _, cert = half_twist_pair(n, q, DefiningSet(n, q, els))
        assert cert.verified
        count += 1
    assert count >= 150


# ---------------------------------------------------------------------------
# the odd-step family (P_gamma)


def test_odd_step_action():
    M = odd_step_transform(8)
    assert M.perm == (0, 7, 2, 1, 4, 3, 6, 5)
    assert M.is_permutation()


def test_odd_step_fixes_all_ones_row():
    K = splitting_field(5, 8)
    ctx = canonical_root(8, 5)
    M = odd_step_transform(8)
    v0 = np.ones(8, dtype=np.uint8)
    assert np.array_equal(M.apply_vector(K, v0), v0)
    # v^(n/4) P_gamma = v^(3n/4)
    v2 = np.array([ctx.alpha_pow(2 * i) for i in range(8)], dtype=np.uint8)
    v6 = np.array([ctx.alpha_pow(6 * i) for i in range(8)], dtype=np.uint8)
    assert np.array_equal(M.apply_vector(K, v2), v6)


def test_odd_step_pair_example():
    C1, C2, cert = odd_step_pair(8, 5, (0, 1, 5))
    assert cert.source == (0, 1, 2, 5)
    assert cert.target == (0, 1, 5, 6)
    assert cert.verified


def test_odd_step_pair_minimal_core():
    _, _, cert = odd_step_pair(8, 5, (0,))
    assert cert.source == (0, 2) and cert.target == (0, 6)
    assert cert.verified


def test_odd_step_pair_n16():
    # {0} plus the full coset of 1 (the bare {1,9} is not closed under 5)
    A = leaders_set(16, 5, (0, 1))
    assert A.elements == (0, 1, 5, 9, 13)
    _, _, cert = odd_step_pair(16, 5, A)
    assert cert.verified


def test_odd_step_pair_rejects_bad_cores():
    with pytest.raises(ValueError):
        odd_step_pair(8, 5, (1,))  # not symmetric under +n/2
    with pytest.raises(ValueError):
        odd_step_pair(8, 5, (2, 6))  # quarter points may not appear


def odd_step_sweep_cases():
    for n, q in ((8, 5), (8, 13), (16, 5), (16, 13)):
        half, quarter = n // 2, n // 4
        for els in all_defining_sets(n, q):
            S = set(els)
            if quarter in S or 3 * quarter in S:
                continue
            if not all(a in (0, half) or (a + half) % n in S for a in S):
                continue
            yield n, q, els


def test_odd_step_theorem_sweep():
    count = 0
    for n, q, els in odd_step_sweep_cases():
        _, _, cert = odd_step_pair(n, q, DefiningSet(n, q, els))
        assert cert.verified
        count += 1
    assert count >= 40


# ---------------------------------------------------------------------------
# the triple-step family (P_chi)


def test_triple_step_shape():
    M = triple_step_transform(27)
    perm = M.perm
    assert perm[0] == 3 and perm[3] == 0
    for i in range(27):
        assert perm[perm[i]] == i  # involution
        if i % 9 in (1, 2, 6):
            assert perm[i] == i


def test_triple_step_parity_row_identity():
    # u = sum of the three parity rows for Z(n/9) has entries in GF(4):
    # 1, w, w^2 at j = 0, 3, 6 mod 9; u P_chi = w * x with x the Z(2n/9) sum
    n = 27
    F = gf4()
    w, w2 = GF4_OMEGA, GF4_OMEGA2
    u = np.zeros(n, dtype=np.uint8)
    x = np.zeros(n, dtype=np.uint8)
    for j in range(0, n, 3):
        u[j] = (1, w, w2)[(j % 9) // 3]
        x[j] = (1, w2, w)[(j % 9) // 3]
    M = triple_step_transform(n)
    got = M.apply_vector(F, u)
    want = np.array([F.mul(w, int(c)) for c in x], dtype=np.uint8)
    assert np.array_equal(got, want)
    # v^a P_chi = v^a for a in {0, n/3, 2n/3}: entries w^(aj * 3/n)
    for a in (0, n // 3, 2 * n // 3):
        va = np.array([F.pow(w, a * j * 3 // n) for j in range(n)],
                      dtype=np.uint8)
        assert np.array_equal(M.apply_vector(F, va), va)


def test_triple_step_bare_pair():
    C1, C2, cert = triple_step_pair(27, (), ())
    assert cert.source == (3, 12, 21)
    assert cert.target == (6, 15, 24)
    assert cert.verified


def test_triple_step_listed_pairs():
    z = coset_table(27, 4)
    z0, z1, z2 = z.coset_of(0), z.coset_of(1), z.coset_of(2)
    z9, z18 = z.coset_of(9), z.coset_of(18)
    cases = [
        ((0,), (1,), set(z0) | set(z1)),
        ((0,), (2,), set(z0) | set(z2)),
        ((0, 9), (1,), set(z0) | set(z1) | set(z9)),
        ((0, 9, 18), (1,), set(z0) | set(z1) | set(z9) | set(z18)),
    ]
    for thirds, e_list, extras in cases:
        C1, C2, cert = triple_step_pair(27, thirds, e_list)
        assert set(cert.source) == extras | set(z.coset_of(3))
        assert set(cert.target) == extras | set(z.coset_of(6))
        assert cert.verified


def test_triple_step_sweep_all_corners_and_progressions():
    seen = set()
    for bmask in range(8):
        thirds = tuple(b for i, b in enumerate((0, 9, 18)) if bmask >> i & 1)
        for emask in range(8):
            e_list = tuple(e for i, e in enumerate((1, 2, 3)) if emask >> i & 1)
            key = (thirds, e_list)
            C1, C2, cert = triple_step_pair(27, thirds, e_list)
            if len(cert.source) >= 27:
                continue
            assert cert.verified
            seen.add((cert.source, cert.target))
    assert len(seen) >= 20


def test_listed_pairs_not_affine_or_multiplier():
    # these triple-step pairs have no affine or multiplier route at all
    C1, C2, cert = triple_step_pair(27, (0,), (1,))
    A1 = DefiningSet(27, 4, cert.source)
    A2 = DefiningSet(27, 4, cert.target)
    assert enumerate_affine_witnesses(A1, A2, mode="cyclic") == []
    for c in range(1, 27):
        if np.gcd(c, 27) == 1:
            assert apply_map(multiplier(27, c), A1) != A2.elements


# ---------------------------------------------------------------------------
# length extension


def test_extend_length_identity():
    C = build_cyclic(8, 3, leaders_set(8, 3, (0, 1, 4)))
    assert extend_length(C, 1) is C


def test_extend_length_dimension():
    C = build_cyclic(8, 3, DefiningSet(8, 3, (0, 1, 3, 4)))
    E = extend_length(C, 2)
    assert (E.n, E.k) == (16, 12)
    assert E.generator_poly == C.generator_poly


def test_extended_code_has_distance_at_most_two():
    C = build_cyclic(8, 3, DefiningSet(8, 3, (0, 1, 3, 4)))
    E = extend_length(C, 2)
    res = min_distance(E.base)
    assert res.complete and res.ub <= 2


def test_extension_preserves_weight_distribution_of_equivalent_pair():
    # necessary condition for the extension conjecture, at n*m = 16
    C1 = build_cyclic(8, 3, DefiningSet(8, 3, (0, 1, 3, 4)))
    C2 = build_cyclic(8, 3, DefiningSet(8, 3, (2, 5, 6, 7)))
    E1 = extend_length(C1, 2)
    E2 = extend_length(C2, 2)
    assert weight_distribution(E1.base).counts == weight_distribution(E2.base).counts


def test_extend_length_rejects_shared_factor():
    C = build_cyclic(8, 3, DefiningSet(8, 3, (0,)))
    with pytest.raises(ValueError):
        extend_length(C, 3)


# ---------------------------------------------------------------------------
# certificates


def test_certify_identity():
    C = build_cyclic(8, 3, DefiningSet(8, 3, (0, 1, 3)))
    certs = certify_equivalence(C, C)
    assert certs and certs[0].kind == "multiplier" and certs[0].params == (1,)
    assert certs[0].verified


def test_multiplier_certificate_and_codeword_sets():
    C1 = build_cyclic(8, 3, DefiningSet(8, 3, (1, 3)))
    C2 = build_cyclic(8, 3, DefiningSet(8, 3, (5, 7)))
    certs = certify_equivalence(C1, C2, use_brute=False)
    mult = [c for c in certs if c.kind == "multiplier"]
    assert mult and mult[0].verified
    # the induced permutation maps codeword sets onto each other
    M = mult[0].transform
    words1 = {bytes(M.apply_vector(C1.base.field, w)) for w in C1.base.codewords()}
    words2 = {bytes(w) for w in C2.base.codewords()}
    assert words1 == words2


def test_certify_sigma_pair_without_affine():
    C1 = build_cyclic(8, 3, DefiningSet(8, 3, (0, 1, 3, 4)))
    C2 = build_cyclic(8, 3, DefiningSet(8, 3, (2, 5, 6, 7)))
    assert apply_monomial(C1.base, half_twist_transform(8, C1.base.field)) == C2.base
    certs = certify_equivalence(C1, C2, use_brute=False)
    kinds = {c.kind for c in certs}
    assert "half_twist" in kinds
    assert "affine" not in kinds and "shift" not in kinds
    assert enumerate_affine_witnesses(C1.defining_set, C2.defining_set) == []


def test_certify_dimension_mismatch_empty():
    C1 = build_cyclic(8, 3, DefiningSet(8, 3, (0,)))
    C2 = build_cyclic(8, 3, DefiningSet(8, 3, (0, 4)))
    assert certify_equivalence(C1, C2) == []


def test_shift_certificate_on_isodual_chain():
    # dual of {0,1,3,4} is {1,2,3,6}; shifting by 4 gives {2,5,6,7}; the
    # half twist carries that back to {0,1,3,4}
    C = build_cyclic(8, 3, DefiningSet(8, 3, (0, 1, 3, 4)))
    D = C.dual()
    assert D.defining_set.elements == (1, 2, 3, 6)
    mid = build_cyclic(8, 3, DefiningSet(8, 3, (2, 5, 6, 7)))
    leg1 = [c for c in certify_equivalence(D, mid, use_brute=False)
            if c.kind == "shift"]
    assert leg1 and leg1[0].params == (1, 4) and leg1[0].verified
    leg2 = [c for c in certify_equivalence(mid, C, use_brute=False)
            if c.kind == "half_twist"]
    assert leg2 and leg2[0].verified
    # and the one-call route finds a two-step composition
    chain = certify_equivalence(D, C, use_brute=False)
    assert any(c.kind == "composition" and c.verified for c in chain)


def test_generalized_multiplier_certificate():
    # at n = 9 over GF(4): {1,3,4,7} maps to {2,3,5,8} under the low-digit
    # doubling map, and no plain multiplier works
    A1 = DefiningSet(9, 4, (1, 3, 4, 7))
    A2 = DefiningSet(9, 4, (2, 3, 5, 8))
    for c in (1, 2, 4, 5, 7, 8):
        assert apply_map(multiplier(9, c), A1) != A2.elements
    assert apply_map(generalized_multiplier(9, 2, 1), A1) == A2.elements
    C1 = build_cyclic(9, 4, A1)
    C2 = build_cyclic(9, 4, A2)
    certs = certify_equivalence(C1, C2, use_brute=False)
    gm = [c for c in certs if c.kind == "generalized_multiplier"]
    assert gm and gm[0].verified  # upgraded by explicit permutation search
    res = brute_force_equivalence(C1.base, C2.base, mode="permutation")
    assert res.status == "equivalent"


def test_generalized_multiplier_fixes_z1_at_9_2():
    A = DefiningSet.from_leaders(9, 2, (1,))
    assert apply_map(generalized_multiplier(9, 2, 1), A) == A.elements


def test_certificate_completeness_n8_gf3():
    # every brute-force monomially equivalent pair is certified, and every
    # certificate corresponds to a genuinely equivalent pair
    codes = [build_cyclic(8, 3, DefiningSet(8, 3, els))
             for els in all_defining_sets(8, 3)]
    equivalent = 0
    for i, C1 in enumerate(codes):
        for C2 in codes[i + 1:]:
            if C1.k != C2.k or C1.k in (0, 8):
                continue
            bf = brute_force_equivalence(C1.base, C2.base)
            certs = certify_equivalence(C1, C2, use_brute=False)
            assert (bf.status == "equivalent") == bool(certs), (
                C1.defining_set.elements, C2.defining_set.elements)
            if certs:
                equivalent += 1
    assert equivalent == 27


def test_certificates_at_9_2_multiplier_scope():
    # all eight codes have distinct dimensions, so permutation equivalence
    # is only the identity; the multiplier machinery still certifies it
    codes = [build_cyclic(9, 2, DefiningSet(9, 2, els))
             for els in all_defining_sets(9, 2)]
    dims = [C.k for C in codes]
    assert len(set(dims)) == len(dims)
    for C in codes:
        certs = certify_equivalence(C, C, use_brute=False)
        assert certs and certs[0].kind == "multiplier"


def test_certify_empty_matches_brute_force_inequivalent():
    C1 = build_cyclic(8, 3, DefiningSet(8, 3, (1, 3)))
    C2 = build_cyclic(8, 3, DefiningSet(8, 3, (0, 4)))
    assert certify_equivalence(C1, C2) == []
    assert brute_force_equivalence(C1.base, C2.base).status == "not_equivalent"


def test_certificate_serialization():
    _, _, cert = half_twist_pair(8, 3, (5, 7))
    d = cert.to_dict()
    assert d["kind"] == "half_twist" and d["verified"] is True
    assert d["source"] == [2, 5, 6, 7] and d["target"] == [0, 1, 3, 4]


# ---------------------------------------------------------------------------
# block-diagonal layout exploration


def test_block_half_twist_certifies_a_pair_at_16():
    # the repeated 8-block layout: find cyclic pairs it certifies at
    # (16, 3) and flag whether any of them lack an affine route
    F = build_field(3, 1)
    B = block_half_twist_transform(16, F)
    by_gen = {}
    codes = []
    for els in all_defining_sets(16, 3):
        C = build_cyclic(16, 3, DefiningSet(16, 3, els))
        by_gen[(C.k, C.base.generator.tobytes())] = C
        codes.append(C)
    pairs = []
    for C in codes:
        img = apply_monomial(C.base, B)
        hit = by_gen.get((img.k, img.generator.tobytes()))
        if hit is not None and hit.defining_set.elements != C.defining_set.elements:
            pairs.append((C, hit))
    assert pairs, "block layout certified nothing at n=16"
    hard = [
        (C, D) for C, D in pairs
        if not enumerate_affine_witnesses(C.defining_set, D.defining_set)
    ]
    assert hard, "every block-certified pair was already affine equivalent"


def test_block_half_twist_differs_from_native():
    F = build_field(3, 1)
    assert block_half_twist_transform(16, F).perm != \
        half_twist_transform(16, F).perm


# ---------------------------------------------------------------------------
# classification


def test_classify_cyclic_8_3():
    classes = classify_cyclic(8, 3)
    flat = [s for cls in classes for s in cls]
    assert len(flat) == 32  # conservation
    lookup = {}
    for idx, cls in enumerate(classes):
        for s in cls:
            lookup[s] = idx
    assert lookup[(0, 1, 3, 4)] == lookup[(2, 5, 6, 7)]
    # intra-class weight distributions agree
    for cls in classes:
        wds = set()
        for s in cls:
            C = build_cyclic(8, 3, DefiningSet(8, 3, s))
            wds.add(weight_distribution(C.base).counts)
        assert len(wds) == 1, cls


def test_classify_matches_brute_force_at_8_3():
    classes = classify_cyclic(8, 3)
    lookup = {}
    for idx, cls in enumerate(classes):
        for s in cls:
            lookup[s] = idx
    codes = [build_cyclic(8, 3, DefiningSet(8, 3, els))
             for els in all_defining_sets(8, 3)]
    for i, C1 in enumerate(codes):
        for C2 in codes[i + 1:]:
            if C1.k != C2.k or C1.k in (0, 8):
                continue
            same = lookup[C1.defining_set.elements] == lookup[
                C2.defining_set.elements]
            bf = brute_force_equivalence(C1.base, C2.base)
            assert same == (bf.status == "equivalent")


def test_classify_cyclic_9_2():
    classes = classify_cyclic(9, 2)
    # eight sets, all of different sizes: every class is a singleton
    assert len(classes) == 8
