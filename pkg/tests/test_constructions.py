import pytest
from hypothesis import given
from hypothesis import strategies as st

from mu4spectra.adic_words import SignedDigitWord
from mu4spectra.constructions import (
    DigitSet,
    GammaLabel,
    GeneralLabelPrefix,
    PeriodicLabel,
    Thm47Label,
    all_periodic_labels,
    canonical_lambda,
    constant_label,
    enumerate_lambda,
    gamma_digits,
    gamma_label,
    lambda_I_members,
    load_label,
    parse_label_spec,
    scaled_lambda,
    thm47_block_start,
    thm47_label,
    validate_digit_set,
)


def congruence_members(label, bound, depth):
    """Integers in [-bound, bound] passing every congruence up to ``depth``.

    Brute force over all 2^depth digit choices, independent of the residue walk.
    """
    digits = label.prefix(depth)
    sums = {0}
    out = set()
    for n in range(1, depth + 1):
        sums = {s + b * digits[n - 1] * 4 ** (n - 1) for s in sums for b in (0, 1)}
    mod = 4**depth
    classes = {s % mod for s in sums}
    for value in range(-bound, bound + 1):
        if value % mod in classes:
            out.add(value)
    return out


class TestDigitSet:
    def test_parse(self):
        assert DigitSet.parse("1,3").digits == (1, 3)
        assert DigitSet.parse(" 15, 3 ").digits == (3, 15)

    @pytest.mark.parametrize("digits,both", [((1, 3), True), ((3, 15), False), ((1, 5), False), ((1, 7), True)])
    def test_report(self, digits, both):
        report = validate_digit_set(digits)
        assert report.odd and report.distinct
        assert report.covers_both_classes is both

    def test_even_digit_rejected(self):
        with pytest.raises(ValueError):
            validate_digit_set((1, 2))
        with pytest.raises(ValueError):
            DigitSet((1, 4))

    def test_duplicates_reported(self):
        assert not validate_digit_set((1, 1, 3)).distinct


class TestEnumerate:
    def test_canonical(self):
        assert enumerate_lambda(constant_label(1), 2) == {0, 1, 4, 5}
        assert canonical_lambda(2) == {0, 1, 4, 5}

    def test_scaled(self):
        assert scaled_lambda(3, 2) == {0, 3, 12, 15}
        assert enumerate_lambda(PeriodicLabel.parse("(3)"), 2) == {0, 3, 12, 15}

    @pytest.mark.parametrize("n", range(1, 15))
    def test_size_and_nesting(self, n):
        cur = canonical_lambda(n)
        assert len(cur) == 2**n
        assert canonical_lambda(n - 1) <= cur if n > 1 else True

    @given(st.lists(st.sampled_from([-7, -3, -1, 1, 3, 5]), min_size=1, max_size=9))
    def test_general_label_sizes(self, digits):
        label = PeriodicLabel(SignedDigitWord(tuple({0, 1, *digits}), tuple(digits), (1,)))
        n = len(digits)
        assert len(enumerate_lambda(label, n)) == 2**n

    def test_general_prefix_matches_level_label(self):
        label = PeriodicLabel.parse("1(3,-1)")
        general = GeneralLabelPrefix.from_level_label(label, 5)
        assert enumerate_lambda(general, 5) == enumerate_lambda(label, 5)

    def test_general_prefix_uses_each_node(self):
        general = GeneralLabelPrefix(((1,), (3, 5)))
        assert enumerate_lambda(general, 2) == {0, 1, 12, 1 + 20}

    def test_general_prefix_shape_checked(self):
        with pytest.raises(ValueError):
            GeneralLabelPrefix(((1,), (3,)))


class TestThm47:
    def test_prefix(self):
        assert thm47_label(5, 8) == [5, -5, -5, 5, 5, -5, -5, -5]

    def test_blocks(self):
        assert [thm47_block_start(k) for k in (1, 2, 3, 4)] == [1, 4, 9, 16]
        label = thm47_label(1, thm47_block_start(6) - 1)
        for k in range(1, 6):
            block = label[thm47_block_start(k) - 1:thm47_block_start(k + 1) - 1]
            assert block == [1] * k + [-1] * (k + 1)

    def test_even_p(self):
        with pytest.raises(ValueError):
            thm47_label(4, 3)
        with pytest.raises(ValueError):
            Thm47Label(2)


class TestGamma:
    def test_digits(self):
        assert gamma_digits(1) == (1, 3)
        assert gamma_digits(2) == (1, 15)
        assert gamma_digits(3) == (1, 63)

    def test_forced_positions(self):
        assert gamma_label(2, "c0", 6) == [15, 1, 15, 1, 15, 1]
        assert gamma_label(3, "c1", 7) == [63] * 7

    def test_alternate(self):
        label = GammaLabel(3, "alternate")
        assert label.prefix(6) == [63, 1, 63, 63, 63, 1]
        periodic = label.as_periodic()
        assert periodic.prefix(24) == label.prefix(24)

    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    @pytest.mark.parametrize("free", ["c0", "c1", "alternate"])
    def test_witness_congruence(self, r, free):
        # the forced digits make -1 = sum 4^(k-1) w_k (mod 4^n) with w_k in {0, a_k}
        label = GammaLabel(r, free)
        digits = label.prefix(10)
        witness = label.witness_digits(10)
        for n in range(1, 11):
            assert all(w in (0, a) for w, a in zip(witness[:n], digits[:n]))
            assert (-1 - sum(w * 4**k for k, w in enumerate(witness[:n]))) % 4**n == 0

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_periodic_form(self, r):
        label = GammaLabel(r, "c0")
        assert label.as_periodic().prefix(30) == label.prefix(30)


class TestMembers:
    def test_three(self):
        members = lambda_I_members(constant_label(3), 5)
        assert sorted(members) == [-4, -1, 0, 3]
        assert members[-1].kind == "infinite"
        assert members[3].kind == "finite"

    def test_one(self):
        assert sorted(lambda_I_members(constant_label(1), 5)) == [0, 1, 4, 5]

    @pytest.mark.parametrize("text", ["(3)", "(1)", "(5)", "1(3)", "(-1,3)", "3(15,1)"])
    def test_against_congruence_oracle(self, text):
        label = PeriodicLabel.parse(text)
        assert set(lambda_I_members(label, 60)) == congruence_members(label, 60, 10)


class TestLabelFiles:
    def test_inline(self):
        assert parse_label_spec("(3)") == constant_label(3)
        assert isinstance(parse_label_spec("thm47 p=5"), Thm47Label)
        assert parse_label_spec("gamma r=2 free=c1") == GammaLabel(2, "c1")

    def test_file_format(self, tmp_path):
        path = tmp_path / "label.txt"
        path.write_text("# three then one\nalphabet: 1,3\npreperiod: 1\nperiod: 0\n")
        label = load_label(str(path))
        assert label.prefix(4) == [3, 1, 1, 1]

    def test_rule_file(self, tmp_path):
        path = tmp_path / "label.txt"
        path.write_text("rule: thm47 p=3\n")
        assert load_label(str(path)) == Thm47Label(3)

    @pytest.mark.parametrize("text", ["alphabet: 1\nperiod: 4\n", "alphabet: 1,3\n", "rule: gamma free=c0", "rule: spiral"])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            parse_label_spec(text)


def test_all_periodic_labels_count():
    labels = list(all_periodic_labels(DigitSet((1, 3)), 3))
    assert len(labels) == 2 + 4 + 8
    assert all(set(l.prefix(6)) <= {1, 3} and len(l.word.period) <= 3 for l in labels)
