import math
import random

import pytest

import treemoves as tm
from treemoves.generate import (
    random_binary_tree,
    random_operations,
    random_permutation,
    random_recursive_tree,
)

from helpers import example_pair, naive_rearrangement_distance


SWAP_BD = tm.Permutation({"b": "d", "d": "b"})


class TestSequenceSize:
    def test_example_witness(self):
        seq = tm.OperationSequence((SWAP_BD, tm.LinkCutOp("f", "d", "c")))
        assert tm.sequence_size(seq) == 3

    def test_empty(self):
        assert tm.sequence_size(tm.OperationSequence()) == 0

    def test_permutations_cancel(self):
        swap = tm.Permutation({"a": "b", "b": "a"})
        assert tm.sequence_size(tm.OperationSequence((swap, swap))) == 0


class TestCanonicalize:
    def test_interchange_example(self):
        # a move followed by a swap equals the swap followed by the
        # relabelled move
        seq = tm.OperationSequence((tm.LinkCutOp("f", "b", "c"), SWAP_BD))
        canonical = tm.canonicalize_sequence(seq)
        assert canonical.ops == (SWAP_BD, tm.LinkCutOp("f", "d", "c"))

    def test_already_canonical_unchanged(self):
        seq = tm.OperationSequence((SWAP_BD, tm.LinkCutOp("f", "d", "c")))
        assert tm.canonicalize_sequence(seq).ops == seq.ops

    def test_replays_to_same_tree(self):
        rng = random.Random(21)
        for _ in range(60):
            t1 = random_recursive_tree(rng, rng.randint(2, 12))
            t2, seq = random_operations(rng, t1, rng.randint(0, 8))
            canonical = tm.canonicalize_sequence(seq)
            assert canonical.ops and isinstance(canonical.ops[0], tm.Permutation)
            assert all(isinstance(op, tm.LinkCutOp) for op in canonical.ops[1:])
            assert tm.replay_sequence(t1, canonical) == t2
            assert tm.sequence_size(canonical) == tm.sequence_size(seq)


class TestVerify:
    def test_example_script(self):
        t1, t2 = example_pair()
        assert tm.verify_sequence(t1, tm.linkcut_script(t1, t2), t2)

    def test_empty_not_enough(self):
        t1, t2 = example_pair()
        assert not tm.verify_sequence(t1, tm.OperationSequence(), t2)

    def test_example_rearrangement_witness(self):
        t1, t2 = example_pair()
        seq = tm.OperationSequence((SWAP_BD, tm.LinkCutOp("f", "d", "c")))
        assert tm.verify_sequence(t1, seq, t2)

    def test_invalid_replay_is_false(self):
        t1, t2 = example_pair()
        bad = tm.OperationSequence((tm.LinkCutOp("b", "a", "d"),))
        assert not tm.verify_sequence(t1, bad, t2)


class TestBruteForce:
    def test_example_distance(self):
        t1, t2 = example_pair()
        result = tm.brute_force_distance(t1, t2)
        assert result.distance == 3
        assert result.method == "oracle"
        assert tm.verify_sequence(t1, result.witness, t2)
        assert tm.sequence_size(result.witness) == 3

    def test_self(self):
        t1, _ = example_pair()
        result = tm.brute_force_distance(t1, t1)
        assert result.distance == 0
        assert tm.verify_sequence(t1, result.witness, t1)

    def test_swap_subtrees(self):
        t1 = tm.parse_tree("((d,e)b,(f,g)c)a;")
        t2 = tm.parse_tree("((f,g)b,(d,e)c)a;")
        assert tm.brute_force_distance(t1, t2).distance == 2

    def test_guard(self):
        t = random_recursive_tree(random.Random(1), 9)
        with pytest.raises(tm.OracleSizeError):
            tm.brute_force_distance(t, t)
        assert tm.brute_force_distance(t, t, max_labels=9).distance == 0

    def test_matches_naive_enumeration(self):
        rng = random.Random(23)
        for _ in range(15):
            n = rng.randint(2, 6)
            labs = [f"v{i}" for i in range(1, n + 1)]
            t1 = random_recursive_tree(rng, n, labs)
            rng.shuffle(labs)
            t2 = random_recursive_tree(rng, n, labs)
            assert (
                tm.brute_force_distance(t1, t2).distance
                == naive_rearrangement_distance(t1, t2)
            )

    def test_symmetry_small(self):
        rng = random.Random(24)
        for _ in range(10):
            n = rng.randint(2, 6)
            labs = [f"v{i}" for i in range(1, n + 1)]
            t1 = random_recursive_tree(rng, n, labs)
            t2 = random_recursive_tree(rng, n, labs)
            assert (
                tm.brute_force_distance(t1, t2).distance
                == tm.brute_force_distance(t2, t1).distance
            )

    def test_never_beaten_by_single_strategy(self):
        rng = random.Random(25)
        for _ in range(15):
            n = rng.randint(2, 7)
            t1 = random_recursive_tree(rng, n)
            t2, _ = random_operations(rng, t1, rng.randint(0, 5), keep_top=True)
            d = tm.brute_force_distance(t1, t2).distance
            assert d <= tm.linkcut_distance(t1, t2)

    def test_never_beaten_by_permutations_alone(self):
        from treemoves.generate import random_relabelling

        rng = random.Random(255)
        for _ in range(15):
            t1 = random_recursive_tree(rng, rng.randint(2, 7))
            t2, _ = random_relabelling(rng, t1)
            d = tm.brute_force_distance(t1, t2).distance
            assert d <= tm.permutation_distance(t1, t2)


class TestFpt:
    def test_example_budgets(self):
        t1, t2 = example_pair()
        hit = tm.fpt_distance(t1, t2, 3)
        assert isinstance(hit, tm.RearrangementResult)
        assert hit.distance == 3 and hit.method == "fpt"
        assert tm.verify_sequence(t1, hit.witness, t2)
        miss = tm.fpt_distance(t1, t2, 2)
        assert isinstance(miss, tm.BudgetExceeded)
        assert miss.budget == 2 and miss.lower_bound == 2

    def test_zero_budget_self(self):
        t1, _ = example_pair()
        result = tm.fpt_distance(t1, t1, 0)
        assert isinstance(result, tm.RearrangementResult) and result.distance == 0

    def test_partition_guard_rejects(self):
        t1, t2 = example_pair()
        # |partition| = 4 > 2 * 1, so k=1 must be rejected without search
        result = tm.fpt_distance(t1, t2, 1)
        assert isinstance(result, tm.BudgetExceeded)
        assert result.best_found is None

    def test_negative_budget(self):
        t1, _ = example_pair()
        with pytest.raises(ValueError):
            tm.fpt_distance(t1, t1, -1)

    def test_agrees_with_oracle(self):
        rng = random.Random(26)
        for _ in range(40):
            n = rng.randint(2, 7)
            labs = [f"v{i}" for i in range(1, n + 1)]
            t1 = random_recursive_tree(rng, n, labs)
            rng.shuffle(labs)
            t2 = random_recursive_tree(rng, n, labs)
            exact = tm.brute_force_distance(t1, t2).distance
            for k in range(0, 6):
                result = tm.fpt_distance(t1, t2, k)
                if exact <= k:
                    assert isinstance(result, tm.RearrangementResult)
                    assert result.distance == exact
                    assert tm.verify_sequence(t1, result.witness, t2)
                else:
                    assert isinstance(result, tm.BudgetExceeded)

    def test_candidate_sets_and_threads_deterministic(self):
        rng = random.Random(27)
        for _ in range(10):
            n = rng.randint(3, 7)
            t1 = random_recursive_tree(rng, n)
            t2, _ = random_operations(rng, t1, 3)
            for k in (2, 4):
                base = tm.fpt_distance(t1, t2, k)
                threaded = tm.fpt_distance(t1, t2, k, threads=4)
                assert base == threaded
                # narrowed sets never undershoot; any witness they return is real
                for cand in ("x", "vg"):
                    narrow = tm.fpt_distance(t1, t2, k, candidates=cand)
                    if isinstance(narrow, tm.RearrangementResult):
                        assert isinstance(base, tm.RearrangementResult)
                        assert narrow.distance >= base.distance
                        assert tm.verify_sequence(t1, narrow.witness, t2)

    def test_narrow_candidates_can_overshoot(self):
        # five labels whose only optimal solution is a 5-cycle moving two
        # labels that have equal parents in both trees: support
        # restrictions to active labels (or graph vertices) miss it
        t1 = tm.parse_tree("(((v5)v3)v2,v4)v1;")
        t2 = tm.parse_tree("(v3,((v4)v1)v5)v2;")
        assert tm.brute_force_distance(t1, t2).distance == 5
        exact = tm.fpt_distance(t1, t2, 5)
        assert isinstance(exact, tm.RearrangementResult) and exact.distance == 5
        for cand in ("x", "vg"):
            narrow = tm.fpt_distance(t1, t2, 5, candidates=cand)
            assert isinstance(narrow, tm.BudgetExceeded)
            assert narrow.best_found == 6


class TestApproxBinary:
    def test_self(self):
        t = random_binary_tree(random.Random(2), 7)
        result = tm.approx_binary(t, t)
        assert result.distance == 0 and result.method == "approx"

    def test_subtree_swap_within_factor(self):
        t1 = tm.parse_tree("((d,e)b,(f,g)c)a;")
        t2 = tm.parse_tree("((f,g)b,(d,e)c)a;")
        result = tm.approx_binary(t1, t2)
        assert result.distance == 4
        assert tm.verify_sequence(t1, result.witness, t2)
        assert result.distance <= 4 * tm.brute_force_distance(t1, t2).distance

    def test_factor_property(self):
        rng = random.Random(28)
        for _ in range(30):
            n = rng.randint(2, 8)
            labs = [f"v{i}" for i in range(1, n + 1)]
            t1 = random_binary_tree(rng, n, labs)
            t2 = random_binary_tree(rng, n, labs)
            result = tm.approx_binary(t1, t2)
            assert tm.verify_sequence(t1, result.witness, t2)
            assert result.distance <= 4 * tm.brute_force_distance(t1, t2).distance

    def test_non_binary_warns_but_computes(self):
        t1, t2 = example_pair()
        with pytest.warns(UserWarning):
            result = tm.approx_binary(t1, t2)
        assert result.distance == 4

    def test_root_mismatch_rejected(self):
        with pytest.raises(tm.RootMismatchError):
            tm.approx_binary(tm.parse_tree("(b)a;"), tm.parse_tree("(a)b;"))


class TestPartitionPerturbation:
    def test_example_swap(self):
        t1, t2 = example_pair()
        assert tm.partition_perturbation(t1, t2, SWAP_BD) == (4, 1)

    def test_empty_permutation(self):
        t1, t2 = example_pair()
        before, after = tm.partition_perturbation(t1, t2, tm.Permutation())
        assert before == after == 4

    def test_bound_property(self):
        rng = random.Random(29)
        for _ in range(120):
            n = rng.randint(3, 12)
            t1 = random_recursive_tree(rng, n)
            t2, _ = random_operations(rng, t1, rng.randint(0, 6), keep_top=True)
            movable = sorted(set(t1.labels) - {t1.root_child})
            pi = random_permutation(rng, movable, rng.randint(2, min(4, len(movable))))
            before, after = tm.partition_perturbation(t1, t2, pi)
            assert before - 2 * pi.size <= after <= before + 2 * pi.size


def test_lower_bound_half_partition():
    rng = random.Random(30)
    for _ in range(30):
        n = rng.randint(2, 7)
        t1 = random_recursive_tree(rng, n)
        t2, _ = random_operations(rng, t1, rng.randint(0, 5), keep_top=True)
        d = tm.brute_force_distance(t1, t2).distance
        assert d >= math.ceil(len(tm.family_partition(t1, t2)) / 2)
