import pytest

from braidwork.extractors import (
    CspInstance,
    build_dehornoy_centralizer_instance,
    build_gtcp_instances,
    build_mscsp_dhdp,
    build_stickel_instance,
    ce_conjugate_sample,
    ce_difference_pair,
)
from braidwork.garside import rewrite, words_equal
from braidwork.protocols import dehornoy_commit, dehornoy_keygen, ka_run, make_preset
from braidwork.subgroups import SubgroupSpec, interval_generators
from braidwork.words import (
    IDENTITY_ENDO,
    SHIFT_ENDO,
    BraidWord,
    apply_endo,
    compose,
    compose_all,
    delta,
    generator,
    identity,
    inner_endo,
    invert,
    power,
    random_word,
    shift,
    shifted_conjugate,
)


def conjugates(g: BraidWord, x: BraidWord, y: BraidWord) -> bool:
    return words_equal(compose_all([g, x, invert(g)]), y)


class TestCeSamples:
    def test_left_sample(self):
        token, probe = BraidWord(4, (1, 2)), generator(4, 3)
        sample = ce_conjugate_sample(token, probe, "left")
        assert words_equal(sample.output, compose_all([token, probe, invert(token)]))

    def test_right_sample(self):
        token, probe = BraidWord(4, (1, 2)), generator(4, 3)
        sample = ce_conjugate_sample(token, probe, "right")
        assert words_equal(sample.output, compose_all([invert(token), probe, token]))

    def test_bad_side(self):
        with pytest.raises(ValueError):
            ce_conjugate_sample(identity(3), identity(3), "up")

    def test_difference_pair_sides(self):
        y1, y2 = BraidWord(3, (1,)), BraidWord(3, (2,))
        assert ce_difference_pair(y1, y2, "left") == compose(y1, invert(y2))
        assert ce_difference_pair(y1, y2, "right") == compose(invert(y2), y1)


class TestCspInstance:
    def test_requires_pairs(self):
        with pytest.raises(ValueError):
            CspInstance((), interval_generators(3, 1, 2))

    def test_record_roundtrip(self):
        inst = CspInstance(
            ((generator(3, 1), generator(3, 2)),),
            interval_generators(3, 1, 2),
            post_transform=generator(3, 1),
            meta=(("extractor", "test"),),
        )
        assert CspInstance.from_record(inst.to_record()) == inst

    def test_strands_is_ambient_max(self):
        inst = CspInstance(
            ((generator(5, 4), generator(5, 4)),), interval_generators(3, 1, 2)
        )
        assert inst.strands == 5


class TestDhdpExtractor:
    @pytest.fixture
    def run(self):
        return ka_run(make_preset("generalized", strands=8, secret_length=4), seed=0)

    @pytest.mark.parametrize(
        "target,secret_fn",
        [
            ("a", lambda s, z: compose(s.a1, z)),
            ("c", lambda s, z: compose(s.b1, z)),
            ("b", lambda s, z: compose(invert(s.a2), invert(z))),
            ("d", lambda s, z: compose(invert(s.b2), invert(z))),
        ],
    )
    def test_known_coset_element_solves(self, run, target, secret_fn):
        inst = build_mscsp_dhdp(run.public, target)
        g = secret_fn(run.secret, run.public.config.base)
        for x, y in inst.pairs:
            assert conjugates(g, x, y)

    @pytest.mark.parametrize(
        "target,secret_attr,sign",
        [("a", "a1", 1), ("c", "b1", 1), ("b", "a2", -1), ("d", "b2", -1)],
    )
    def test_post_transform_recovers_secret_factor(
        self, run, target, secret_attr, sign
    ):
        inst = build_mscsp_dhdp(run.public, target)
        z = run.public.config.base
        g = (
            compose(getattr(run.secret, secret_attr), z)
            if sign == 1
            else compose(invert(getattr(run.secret, secret_attr)), invert(z))
        )
        recovered = compose(g, inst.post_transform)
        expected = getattr(run.secret, secret_attr)
        if sign == -1:
            expected = invert(expected)
        assert words_equal(recovered, expected)

    def test_alphabet_matches_secret_source(self, run):
        cfg = run.public.config
        assert build_mscsp_dhdp(run.public, "a").alphabet == cfg.left_a
        assert build_mscsp_dhdp(run.public, "d").alphabet == cfg.right_b

    def test_trivial_base_drops_post_transform(self):
        run = ka_run(make_preset("stickel", strands=8), seed=1)
        inst = build_mscsp_dhdp(run.public, "a")
        assert inst.post_transform is None

    def test_rejects_probe_outside_commutant(self, run):
        with pytest.raises(ValueError):
            build_mscsp_dhdp(run.public, "a", probes=(generator(8, 1),))

    def test_rejects_unknown_target(self, run):
        with pytest.raises(ValueError):
            build_mscsp_dhdp(run.public, "z")

    def test_outputs_are_canonical(self, run):
        inst = build_mscsp_dhdp(run.public, "a")
        for _, y in inst.pairs:
            assert y == rewrite(y)


class TestStickelExtractor:
    def test_true_power_solves(self):
        config = make_preset("stickel", strands=8, exponent_bound=3)
        run = ka_run(config, seed=4)
        a, b = config.stickel_pair
        r, s, _, _ = run.secret.exponents
        inst = build_stickel_instance(a, b, run.public.token_a, alpha=1)
        (x, y), = inst.pairs
        assert conjugates(power(a, r), x, y)

    def test_rejects_zero_alpha(self):
        a, b = BraidWord(4, (1, 2)), BraidWord(4, (2, 3))
        with pytest.raises(ValueError):
            build_stickel_instance(a, b, identity(4), alpha=0)


class TestGtcpExtractors:
    def samples(self, endos, r, ps):
        u, v, w = endos
        return tuple(
            (
                rewrite(
                    compose_all([apply_endo(u, r), apply_endo(v, p), apply_endo(w, invert(r))])
                ),
                p,
            )
            for p in ps
        )

    @pytest.fixture
    def setup(self):
        spec = interval_generators(4, 1, 3)
        endos = (inner_endo(generator(4, 1)), IDENTITY_ENDO, inner_endo(generator(4, 2)))
        r = BraidWord(4, (2, 1))
        ps = (generator(4, 1), generator(4, 3), BraidWord(4, (2, 3)))
        return spec, endos, r, ps

    def test_pairwise_ce1_solved_by_u_image(self, setup):
        spec, endos, r, ps = setup
        u = endos[0]
        inst = build_gtcp_instances(self.samples(endos, r, ps), endos, "pairwise-ce1", spec)
        g = apply_endo(u, r)
        for x, y in inst.pairs:
            assert conjugates(g, x, y)

    def test_pairwise_ce2_solved_by_w_image(self, setup):
        spec, endos, r, ps = setup
        w = endos[2]
        inst = build_gtcp_instances(self.samples(endos, r, ps), endos, "pairwise-ce2", spec)
        g = invert(apply_endo(w, invert(r)))
        for x, y in inst.pairs:
            assert conjugates(g, x, y)

    def test_centralizer_ce3_solved_by_uv_product(self, setup):
        spec, endos, r, ps = setup
        u, v, _ = endos
        inst = build_gtcp_instances(
            self.samples(endos, r, ps), endos, "centralizer-ce3", spec, sample_index=1
        )
        g = compose(apply_endo(u, r), apply_endo(v, ps[1]))
        for x, y in inst.pairs:
            assert conjugates(g, x, y)
        assert words_equal(compose(g, inst.post_transform), apply_endo(u, r))

    def test_centralizer_ce4_solved_by_wv_product(self, setup):
        spec, endos, r, ps = setup
        _, v, w = endos
        inst = build_gtcp_instances(
            self.samples(endos, r, ps), endos, "centralizer-ce4", spec, sample_index=0
        )
        g = compose(invert(apply_endo(w, invert(r))), invert(apply_endo(v, ps[0])))
        for x, y in inst.pairs:
            assert conjugates(g, x, y)
        assert words_equal(
            compose(g, inst.post_transform), invert(apply_endo(w, invert(r)))
        )

    def test_shift_endo_alphabet(self, setup):
        spec, _, r, ps = setup
        endos = (SHIFT_ENDO, IDENTITY_ENDO, IDENTITY_ENDO)
        inst = build_gtcp_instances(self.samples(endos, r, ps), endos, "pairwise-ce1", spec)
        g = shift(r)
        for x, y in inst.pairs:
            assert conjugates(g, x, y)
        for gen in inst.alphabet.generators:
            assert 1 not in {abs(x) for x in gen.letters}

    def test_pairwise_needs_two_samples(self, setup):
        spec, endos, r, ps = setup
        with pytest.raises(ValueError):
            build_gtcp_instances(self.samples(endos, r, ps[:1]), endos, "pairwise-ce1", spec)

    def test_unknown_mode(self, setup):
        spec, endos, r, ps = setup
        with pytest.raises(ValueError):
            build_gtcp_instances(self.samples(endos, r, ps), endos, "ce5", spec)


class TestDehornoyCentralizerExtractor:
    def test_known_solution_solves(self):
        keys = dehornoy_keygen(strands=3, secret_length=2, base_length=2, seed=0)
        r = BraidWord(3, (1, 2))
        x, _ = dehornoy_commit(keys, r)
        # x = r . d(p) . sigma_1 . d(r)^-1, so O = d(p).sigma_1.d(r)^-1 satisfies
        # x^-1 N x = O^-1 N O for every N commuting with r.
        o = compose_all([shift(keys.base), generator(4, 1), invert(shift(r))])
        probes = (power(delta(4), 2), rewrite(compose(r.embed(4), power(delta(4), 2))))
        inst = build_dehornoy_centralizer_instance(x.embed(4), probes)
        g = invert(o)
        for px, py in inst.pairs:
            assert conjugates(g, px, py)

    def test_degenerate_probes_flagged(self):
        x = BraidWord(4, (1, 2))
        probes = (power(delta(4), 2), generator(4, 3))
        inst = build_dehornoy_centralizer_instance(x, probes)
        assert "0" in inst.meta_dict()["degenerate_pairs"].split(",")

    def test_requires_probes(self):
        with pytest.raises(ValueError):
            build_dehornoy_centralizer_instance(BraidWord(3, (1,)), ())
