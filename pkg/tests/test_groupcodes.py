"""Difference sets, covers, and code routes: oracle values and failure paths."""

import itertools

import numpy as np
import pytest

from linekit.finite_algebra import AbelianGroup, GroupAlgebraElement
from linekit.groupcodes import (
    LinearCode,
    classify_difference_set,
    code_to_lines,
    code_weights,
    coset_spectrum,
    cover_graph,
    diffset_from_json,
    diffset_lines,
    diffset_to_json,
    dual_code,
    field_rds,
    linear_code_from_csv,
    linear_code_to_csv,
    rds_to_mubs,
    semifield_rds,
    singer_difference_set,
)
from linekit.linesets import design_strength, gram_degree_set, verify_equiangular, verify_mub
from linekit.mubs import SemifieldTable, wf_mubs

FANO = [(1,), (2,), (4,)]
Z7 = AbelianGroup([7])


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def test_classify_fano_plane_set():
    rep = classify_difference_set(Z7, FANO)
    assert rep.kind == "plain"
    assert rep.params == (7, 3, 1)
    assert rep.excluded_subgroup is None
    assert rep.difference_multiset[(0,)] == 3


def test_classify_subgroup_coset_is_none():
    G = AbelianGroup([3, 3])
    rep = classify_difference_set(G, [(0, 0), (1, 0), (2, 0)])
    assert rep.kind == "none"


def test_classify_z2z2_never_relative():
    # every element of Z2 x Z2 is self-inverse, so both differences of a
    # 2-subset coincide: no 2-subset can spread mass with lambda = 1
    G = AbelianGroup([2, 2])
    for D in itertools.combinations(G.elements(), 2):
        assert classify_difference_set(G, list(D)).kind == "none"


def test_classify_semifield_gf3():
    G, D, N = semifield_rds(SemifieldTable.from_field(3))
    rep = classify_difference_set(G, D, N)
    assert rep.kind == "relative"
    assert rep.params == (3, 3, 3, 1)
    assert rep.excluded_subgroup == [(0, 0), (0, 1), (0, 2)]


def test_classify_supplied_n_must_be_subgroup():
    G = AbelianGroup([4])
    with pytest.raises(ValueError, match="not a subgroup"):
        classify_difference_set(G, [(0,), (1,)], N=[(0,), (1,)])


def test_classify_supplied_n_mismatch_gives_none():
    # {0,1} in Z4 is relative against {0,2}; against the full group it is not
    rep = classify_difference_set(AbelianGroup([4]), [(0,), (1,)], N=[(0,), (1,), (2,), (3,)])
    assert rep.kind == "none"


def test_classify_input_validation():
    with pytest.raises(ValueError, match="empty"):
        classify_difference_set(Z7, [])
    with pytest.raises(ValueError, match="repeated"):
        classify_difference_set(Z7, [(1,), (1,)])
    with pytest.raises(ValueError, match="supply"):
        classify_difference_set(AbelianGroup([625]), [(0,), (1,)])


def test_difference_multiset_mass():
    rep = classify_difference_set(Z7, FANO)
    diffs = rep.difference_multiset
    assert diffs[(0,)] == 3
    assert sum(diffs.coefficients.values()) == 9


# ---------------------------------------------------------------------------
# character lines from difference sets
# ---------------------------------------------------------------------------


def test_fano_lines_equiangular():
    X = diffset_lines(Z7, FANO)
    assert (X.n, X.dim) == (7, 3)
    rep = gram_degree_set(X)
    assert rep.s == 1
    assert rep.angles[0] == pytest.approx(2 / 9, abs=1e-12)
    eq = verify_equiangular(X)
    assert eq["equiangular"] and eq["relative_equality"]


@pytest.mark.parametrize(
    "q,params", [(2, (7, 3, 1)), (3, (13, 4, 1)), (4, (21, 5, 1))]
)
def test_singer_sets(q, params):
    G, D = singer_difference_set(q)
    rep = classify_difference_set(G, D)
    assert rep.kind == "plain"
    assert rep.params == params
    X = diffset_lines(G, D)
    assert (X.n, X.dim) == (params[0], params[1])
    eq = verify_equiangular(X)
    assert eq["equiangular"] and eq["relative_equality"]
    assert eq["alpha"] == pytest.approx(q / (q + 1) ** 2, abs=1e-12)
    assert design_strength(X, t_max=1).strength >= 1


def test_singer_q2_is_a_fano_shift():
    _, D = singer_difference_set(2)
    ds = {g[0] for g in D}
    assert any({(d + t) % 7 for d in ds} == {1, 2, 4} for t in range(7))


def test_full_group_gives_character_basis():
    G = AbelianGroup([5])
    X = diffset_lines(G, G.elements())
    assert (X.n, X.dim) == (5, 5)
    rep = gram_degree_set(X)
    assert rep.s == 1 and rep.zero_present
    assert rep.angles[0] == pytest.approx(0, abs=1e-12)


def test_lines_require_generating_set():
    G = AbelianGroup([6])
    with pytest.raises(ValueError, match="generate"):
        diffset_lines(G, [(0,), (2,), (4,)])


@pytest.mark.parametrize(
    "orders,D",
    [([7], FANO), ([12], [(0,), (1,), (3,), (7,)]), ([2, 4], [(0, 0), (1, 1), (0, 3)])],
)
def test_degree_set_size_counts_character_values(orders, D):
    # the Gram-level degree set equals the set of |chi(D D^-1)| / k^2 values
    G = AbelianGroup(orders)
    diffs = classify_difference_set(G, D).difference_multiset
    k = len(D)
    vals = set()
    for a in G.elements():
        if a == G.identity:
            continue
        vals.add(round(abs(diffs.character_sum(a)) / k**2, 9))
    X = diffset_lines(G, D)
    assert gram_degree_set(X).s == len(vals)


# ---------------------------------------------------------------------------
# relative difference sets and their unbiased bases
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_field_rds_classifies(q):
    G, D, N = field_rds(q)
    rep = classify_difference_set(G, D, N)
    assert rep.kind == "relative"
    assert rep.params == (q, q, q, 1)
    # inference without N lands on the same subgroup
    assert classify_difference_set(G, D).excluded_subgroup == rep.excluded_subgroup


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_rds_to_mubs_full_families(q):
    G, D, N = field_rds(q)
    fam = rds_to_mubs(G, D, N)
    assert len(fam) == q + 1
    rep = verify_mub(fam.to_lineset())
    assert rep["unbiased"] and rep["count"] == q + 1


def test_rds_mubs_match_wf_angles():
    G, D, N = field_rds(3)
    ours = gram_degree_set(rds_to_mubs(G, D, N).to_lineset())
    wf = gram_degree_set(wf_mubs(3).to_lineset())
    assert np.allclose(ours.angles, wf.angles, atol=1e-10)
    assert ours.multiplicities == wf.multiplicities


def test_rds_to_mubs_z4_hand_example():
    G = AbelianGroup([4])
    fam = rds_to_mubs(G, [(0,), (1,)], [(0,), (2,)])
    assert fam.d == 2 and len(fam) == 3


def test_rds_to_mubs_rejects_plain():
    with pytest.raises(ValueError, match="relative"):
        rds_to_mubs(Z7, FANO)


def test_rds_to_mubs_rejects_non_semiregular():
    # {0,1,3} mod 8 is a (4,2,3,1)-RDS with excluded subgroup {0,4}
    G = AbelianGroup([8])
    D = [(0,), (1,), (3,)]
    rep = classify_difference_set(G, D)
    assert rep.params == (4, 2, 3, 1)
    with pytest.raises(ValueError, match="semi-regular"):
        rds_to_mubs(G, D)


def test_semifield_rds_rejects_even_characteristic():
    with pytest.raises(ValueError, match="Galois-ring"):
        semifield_rds(SemifieldTable.from_field(4))


# ---------------------------------------------------------------------------
# covers
# ---------------------------------------------------------------------------


def _spectrum_dict(graph):
    return {round(v, 6): m for v, m in graph.eigenvalues}


def test_tank_trap_cover():
    g = cover_graph(builtin="tank-trap")
    assert g.intersection_array == ([6, 5, 4, 1], [1, 2, 5, 6])
    assert g.diameter == 4
    assert g.adjacency.shape == (36, 36)
    assert (g.adjacency.sum(axis=1) == 6).all()
    assert _spectrum_dict(g) == {
        6.0: 1,
        round(np.sqrt(6), 6): 12,
        0.0: 10,
        -round(np.sqrt(6), 6): 12,
        -6.0: 1,
    }
    assert len(g.edge_list()) == 108
    assert "B_inf(0)" in g.labels and "W_4(2)" in g.labels


@pytest.mark.parametrize(
    "q,array",
    [(3, ([3, 2, 2, 1], [1, 1, 2, 3])), (4, ([4, 3, 3, 1], [1, 1, 3, 4]))],
)
def test_rds_cover_arrays(q, array):
    G, D, N = field_rds(q)
    g = cover_graph(G, D, N)
    assert g.intersection_array == array
    k = array[0][0]
    n_fold = (k - array[1][1]) // array[1][1] + 1
    spec = _spectrum_dict(g)
    assert spec[float(k)] == 1 and spec[-float(k)] == 1
    assert spec[round(np.sqrt(k), 6)] == k * (n_fold - 1)
    assert spec[0.0] == 2 * (k - 1)
    assert sum(m for _, m in g.eigenvalues) == g.adjacency.shape[0]


def test_octagon_is_double_cover_of_k22():
    g = cover_graph(AbelianGroup([4]), [(0,), (1,)], [(0,), (2,)])
    assert g.intersection_array == ([2, 1, 1, 1], [1, 1, 1, 2])
    assert g.adjacency.shape == (8, 8)


def test_cover_eigenvalues_match_dense_solve():
    g = cover_graph(builtin="tank-trap")
    dense = np.sort(np.linalg.eigvalsh(g.adjacency.astype(float)))
    rebuilt = np.sort(np.concatenate([[v] * m for v, m in g.eigenvalues]))
    assert np.abs(dense - rebuilt).max() < 1e-8


def test_cover_rejects_k22():
    with pytest.raises(ValueError, match="diameter 2"):
        cover_graph(AbelianGroup([2]), [(0,), (1,)])


def test_cover_rejects_non_distance_regular():
    with pytest.raises(ValueError, match="witness pair"):
        cover_graph(AbelianGroup([8]), [(0,), (1,), (3,)])


def test_cover_argument_validation():
    with pytest.raises(ValueError, match="builtin"):
        cover_graph(builtin="barbed-wire")
    with pytest.raises(ValueError, match="need"):
        cover_graph()
    with pytest.raises(ValueError, match="relative"):
        cover_graph(Z7, FANO, N=[(0,)])


# ---------------------------------------------------------------------------
# linear codes
# ---------------------------------------------------------------------------


def test_repetition_code_weights():
    assert code_weights(LinearCode([[1] * 5], 2)) == {0: 1, 5: 1}


def test_whole_space_dual_is_zero_code():
    dual = dual_code(LinearCode(np.eye(4, dtype=int), 2))
    assert dual.codewords().tolist() == [[0, 0, 0, 0]]


def test_z4_generator_11():
    C = LinearCode([[1, 1]], "z4")
    assert C.codewords().tolist() == [[0, 0], [1, 1], [2, 2], [3, 3]]
    assert code_weights(C) == {0: 1, 2: 2, 4: 1}
    assert C.min_distance() == 2


def test_alphabet_validation():
    with pytest.raises(ValueError, match="prime"):
        LinearCode([[1, 0]], 4)
    with pytest.raises(ValueError, match="prime"):
        LinearCode([[1, 0]], 9)
    with pytest.raises(ValueError, match="empty"):
        LinearCode(np.zeros((0, 0)), 2)


def test_enumeration_cap():
    with pytest.raises(ValueError, match="2\\^20"):
        LinearCode(np.eye(21, dtype=int), 2).codewords()


@pytest.mark.parametrize("q", [2, 3])
def test_gf_dual_involution(q):
    rng = np.random.default_rng(101 + q)
    for _ in range(8):
        C = LinearCode(rng.integers(0, q, size=(rng.integers(1, 4), rng.integers(2, 7))), q)
        Cd = C.dual()
        assert not ((C.codewords() @ Cd.codewords().T) % q).any()
        assert len(C) * len(Cd) == q**C.n
        assert Cd.dual().codewords().tolist() == C.codewords().tolist()


def test_z4_dual_involution():
    rng = np.random.default_rng(7)
    for _ in range(12):
        C = LinearCode(rng.integers(0, 4, size=(rng.integers(1, 4), rng.integers(2, 7))), "z4")
        Cd = C.dual()
        assert not ((C.codewords() @ Cd.codewords().T) % 4).any()
        assert len(C) * len(Cd) == 4**C.n
        assert Cd.dual().codewords().tolist() == C.codewords().tolist()


# ---------------------------------------------------------------------------
# coset-graph spectra
# ---------------------------------------------------------------------------


def _dense_coset_spectrum(C):
    """Eigensolve the literal (multi)graph on syndromes."""
    H = C.dual().generators
    mod = 4 if C.kind == "z4" else C.q
    syn = {}
    for x in itertools.product(range(mod), repeat=C.n):
        s = tuple((H @ np.array(x)) % mod)
        syn.setdefault(s, len(syn))
    A = np.zeros((len(syn), len(syn)))
    cols = [np.array(c) for c in (H.T % mod)]
    scalars = (1, 3) if C.kind == "z4" else range(1, C.q)
    for s, i in syn.items():
        for col in cols:
            for a in scalars:
                t = tuple((np.array(s) + a * col) % mod)
                A[i, syn[t]] += 1
    return sorted(np.linalg.eigvalsh(A).tolist(), reverse=True)


def test_even_weight_code_spectrum():
    C = LinearCode([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]], 2)
    assert dual_code(C).codewords().tolist() == [[0, 0, 0, 0], [1, 1, 1, 1]]
    assert coset_spectrum(C) == [4, -4]


def test_hamming_code_spectrum():
    # dual = simplex, weights {0, 4}: one 7 and seven copies of 7 - 8 = -1
    H = [[0, 0, 0, 1, 1, 1, 1], [0, 1, 1, 0, 0, 1, 1], [1, 0, 1, 0, 1, 0, 1]]
    hamming = LinearCode(H, 2).dual()
    assert hamming.min_distance() == 3
    assert coset_spectrum(hamming) == [7] + [-1] * 7


def test_trivial_eigenvalue_from_zero_dual_word():
    C = LinearCode([[1, 2, 0], [0, 1, 1]], 3)
    assert max(coset_spectrum(C)) == (3 - 1) * C.n


@pytest.mark.parametrize("q", [2, 3])
def test_gf_spectra_match_dense(q):
    rng = np.random.default_rng(31 + q)
    done = 0
    while done < 6:
        C = LinearCode(rng.integers(0, q, size=(rng.integers(1, 4), rng.integers(2, 6))), q)
        if len(C.dual()) > 512:
            continue
        closed = coset_spectrum(C)
        dense = _dense_coset_spectrum(C)
        assert np.abs(np.array(closed, dtype=float) - np.array(dense)).max() < 1e-8
        done += 1


def test_z4_spectra_match_dense():
    rng = np.random.default_rng(5)
    done = 0
    while done < 5:
        C = LinearCode(rng.integers(0, 4, size=(rng.integers(1, 3), rng.integers(2, 5))), "z4")
        if len(C.dual()) > 512:
            continue
        closed = coset_spectrum(C)
        dense = _dense_coset_spectrum(C)
        assert np.abs(np.array(closed, dtype=float) - np.array(dense)).max() < 1e-8
        done += 1


# ---------------------------------------------------------------------------
# codeword lines
# ---------------------------------------------------------------------------


def test_simplex_lines_one_distance():
    H = [[0, 0, 0, 1, 1, 1, 1], [0, 1, 1, 0, 0, 1, 1], [1, 0, 1, 0, 1, 0, 1]]
    X = code_to_lines(LinearCode(H, 2), "gf-balanced")
    assert (X.n, X.dim, X.field) == (8, 7, "real")
    rep = gram_degree_set(X)
    assert rep.s == 1
    assert rep.angles[0] == pytest.approx(1 / 49, abs=1e-12)


def test_binary_code_with_ones_halves():
    C = LinearCode([[1, 1, 1, 1], [1, 1, 0, 0]], 2)
    assert len(C) == 4
    assert code_to_lines(C, "gf-near-balanced").n == 2


def test_z4_all_ones_collapses_fourfold():
    X = code_to_lines(LinearCode([[1, 1]], "z4"), "z4")
    assert X.n == 1


def test_gf3_balanced_pair_code():
    # span{[1,2]}: words 00, 12, 21 are all balanced; three tight lines in C^2
    X = code_to_lines(LinearCode([[1, 2]], 3), "gf-balanced")
    assert (X.n, X.dim) == (3, 2)
    eq = verify_equiangular(X)
    assert eq["equiangular"] and eq["relative_equality"]
    assert eq["alpha"] == pytest.approx(1 / 4, abs=1e-12)


def test_gf3_balanced_block_code():
    C = LinearCode([[1, 2, 0, 0], [0, 0, 1, 2]], 3)
    X = code_to_lines(C, "gf-balanced")
    assert (X.n, X.dim) == (9, 4)
    assert gram_degree_set(X).s == 2


def test_gf3_near_balanced_with_ones():
    # all nine words of span{[1,1,1],[0,1,2]} are near-balanced; 3-fold collapse
    C = LinearCode([[1, 1, 1], [0, 1, 2]], 3)
    X = code_to_lines(C, "gf-near-balanced")
    assert (X.n, X.dim) == (3, 3)
    assert gram_degree_set(X).zero_present


def test_balance_hypothesis_witnesses():
    tetra = LinearCode([[1, 0, 1, 1], [0, 1, 1, 2]], 3)
    with pytest.raises(ValueError, match="not balanced"):
        code_to_lines(tetra, "gf-balanced")
    no_ones = LinearCode([[1, 1, 0, 0]], 2)
    with pytest.raises(ValueError, match="all-ones"):
        code_to_lines(no_ones, "gf-near-balanced")
    with pytest.raises(ValueError, match="all-ones"):
        code_to_lines(LinearCode([[1, 3]], "z4"), "z4")
    with pytest.raises(ValueError, match="needs a GF"):
        code_to_lines(LinearCode([[1, 1]], "z4"), "gf-balanced")
    with pytest.raises(ValueError, match="needs a Z4"):
        code_to_lines(no_ones, "z4")
    with pytest.raises(ValueError, match="unknown variant"):
        code_to_lines(no_ones, "gf-exotic")


def test_gf3_non_near_balanced_witness():
    # [1,2,2] uses each letter a different number of times (0, 1, 2): no
    # single letter can absorb the imbalance
    C = LinearCode([[1, 2, 2], [1, 1, 1]], 3)
    assert C.contains([1, 1, 1])
    with pytest.raises(ValueError, match="near-balanced"):
        code_to_lines(C, "gf-near-balanced")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_diffset_json_roundtrip(tmp_path):
    G, D, N = field_rds(3)
    path = tmp_path / "rds.json"
    diffset_to_json(G, D, N, path=path)
    G2, D2, N2 = diffset_from_json(str(path))
    assert G2.cyclic_orders == G.cyclic_orders
    assert sorted(D2) == sorted(D) and sorted(N2) == sorted(N)
    # and inline round trip without touching disk
    G3, D3, N3 = diffset_from_json(diffset_to_json(G, D))
    assert G3.cyclic_orders == G.cyclic_orders and N3 is None


@pytest.mark.parametrize("alphabet", [2, 3, "z4"])
def test_code_csv_roundtrip(tmp_path, alphabet):
    rng = np.random.default_rng(17)
    q = 4 if alphabet == "z4" else alphabet
    C = LinearCode(rng.integers(0, q, size=(2, 5)), alphabet)
    path = tmp_path / "code.csv"
    linear_code_to_csv(C, path)
    C2 = linear_code_from_csv(path)
    assert C2.kind == C.kind and C2.q == C.q
    assert C2.codewords().tolist() == C.codewords().tolist()


def test_csv_rejects_garbage(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("alphabet=16\n1,2\n")
    with pytest.raises(ValueError, match="alphabet"):
        linear_code_from_csv(str(path))
