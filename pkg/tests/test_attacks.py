import dataclasses

import pytest

from braidwork.attacks import (
    attack_decomposition,
    attack_dehornoy_centralizer,
    attack_dehornoy_pair,
    attack_stickel,
    complete_base,
    decide_edl,
    partial_factor_attack,
    solve_gtcp,
)
from braidwork.garside import is_trivial, rewrite, words_equal
from braidwork.protocols import (
    DehornoyKeys,
    dehornoy_commit,
    dehornoy_keygen,
    dehornoy_respond,
    ka_run,
    make_preset,
)
from braidwork.solvers import SolverConfig
from braidwork.subgroups import SubgroupSpec, elements_commute, interval_generators
from braidwork.words import (
    IDENTITY_ENDO,
    SHIFT_ENDO,
    BraidWord,
    apply_endo,
    compose,
    compose_all,
    generator,
    identity,
    inner_endo,
    invert,
    power,
    random_word,
    shifted_conjugate,
)


class TestDecomposition:
    @pytest.mark.parametrize("preset", ["klchkp", "cklhc"])
    @pytest.mark.parametrize("party", ["a", "b"])
    def test_recovers_key(self, preset, party):
        run = ka_run(make_preset(preset, strands=6, secret_length=2), seed=0)
        report = attack_decomposition(
            run.public, SolverConfig(max_length=3), party=party, oracle=run.secret
        )
        assert report.success
        assert report.harness_verdict is True

    def test_generalized_preset(self):
        run = ka_run(make_preset("generalized", strands=8, secret_length=2), seed=1)
        report = attack_decomposition(
            run.public, SolverConfig(max_length=2), oracle=run.secret
        )
        assert report.success and report.harness_verdict is True

    def test_trivial_secrets(self):
        run = ka_run(
            make_preset("klchkp", strands=6, secret_length=0, base_length=2), seed=0
        )
        report = attack_decomposition(
            run.public, SolverConfig(max_length=1), oracle=run.secret
        )
        assert report.success and report.harness_verdict is True

    def test_descent_method(self):
        config = dataclasses.replace(
            make_preset("klchkp", strands=8, secret_length=3), positive_only=True
        )
        run = ka_run(config, seed=2)
        report = attack_decomposition(
            run.public,
            SolverConfig(max_length=3, restarts=6, length_functional="difference"),
            method="descent",
            oracle=run.secret,
        )
        assert report.success and report.harness_verdict is True

    @pytest.mark.parametrize("seed", range(5))
    def test_tampered_transcript_never_yields_key(self, seed):
        run = ka_run(make_preset("klchkp", strands=6, secret_length=2), seed=seed)
        mid = generator(6, 3)
        tampered = dataclasses.replace(
            run.public, token_a=rewrite(compose(run.public.token_a, mid))
        )
        report = attack_decomposition(
            tampered, SolverConfig(max_length=2), oracle=run.secret
        )
        assert not (report.success and report.harness_verdict)

    def test_failure_reports_unsolved_check(self):
        run = ka_run(make_preset("klchkp", strands=6, secret_length=4), seed=1)
        report = attack_decomposition(run.public, SolverConfig(max_length=1))
        assert not report.success
        assert ("left-instance-solved", False) in [
            (c.name, c.passed) for c in report.checks
        ]

    def test_bad_party(self):
        run = ka_run(make_preset("klchkp", strands=6, secret_length=2), seed=0)
        with pytest.raises(ValueError):
            attack_decomposition(run.public, SolverConfig(max_length=2), party="c")

    def test_report_record_shape(self):
        run = ka_run(make_preset("klchkp", strands=6, secret_length=2), seed=0)
        record = attack_decomposition(
            run.public, SolverConfig(max_length=3), oracle=run.secret
        ).to_record()
        assert set(record) == {
            "attack",
            "recovered",
            "checks",
            "harness_verdict",
            "solver_reports",
            "timings_ms",
        }
        assert record["timings_ms"] == {}
        assert "key-candidate" in record["recovered"]


class TestStickel:
    def test_recovers_key(self):
        config = make_preset("stickel", strands=8, exponent_bound=4)
        run = ka_run(config, seed=5)
        a, b = config.stickel_pair
        report = attack_stickel(
            a,
            b,
            run.public.token_a,
            run.public.token_b,
            exponent_bound=4,
            oracle=run.secret,
        )
        assert report.success
        assert report.harness_verdict is True

    def test_honest_failure_below_true_exponent(self):
        a, b = BraidWord(6, (1, 2)), BraidWord(6, (2, 3))
        token_a = rewrite(compose(power(a, 2), power(b, 1)))
        token_b = rewrite(compose(power(a, 1), power(b, 2)))
        report = attack_stickel(a, b, token_a, token_b, exponent_bound=1)
        assert not report.success
        assert report.recovered == ()


class TestEdl:
    alphabet = interval_generators(6, 1, 2)

    def planted_tokens(self, u, v, xs):
        return tuple((x, rewrite(compose_all([u, x, v]))) for x in xs)

    def test_planted_positive(self):
        u = BraidWord(6, (1, 2))
        v = BraidWord(6, (2,))
        xs = (generator(6, 4), BraidWord(6, (4, 5)), generator(6, 5))
        tokens = self.planted_tokens(u, v, xs)
        (decision,) = decide_edl(
            tokens, SolverConfig(max_length=2, alphabet=self.alphabet)
        )
        assert decision.verdict == "YES"
        assert all(decision.verified)
        u_cand, v_cand = decision.witnesses
        for x, y in tokens:
            assert words_equal(compose_all([u_cand, x, v_cand]), y)

    def test_unrelated_tokens_no_evidence(self):
        tokens = (
            (generator(6, 4), generator(6, 5)),
            (generator(6, 5), BraidWord(6, (4, 4))),
        )
        (decision,) = decide_edl(
            tokens, SolverConfig(max_length=2, alphabet=self.alphabet)
        )
        assert decision.verdict == "NO-EVIDENCE"
        assert decision.witnesses is None

    def test_subset_mode_localizes_plant(self):
        u = BraidWord(6, (1, 2))
        v = invert(u)
        x0, x1, x2 = generator(6, 4), BraidWord(6, (4, 5)), generator(6, 5)
        tokens = self.planted_tokens(u, v, (x0, x1)) + (
            (x2, rewrite(compose_all([generator(6, 3), x2, generator(6, 3)]))),
        )
        decisions = decide_edl(
            tokens,
            SolverConfig(max_length=2, alphabet=self.alphabet),
            subsets=((0, 1), (0, 2), (1, 2)),
        )
        assert [d.verdict for d in decisions] == ["YES", "NO-EVIDENCE", "NO-EVIDENCE"]

    def test_requires_alphabet(self):
        tokens = ((identity(4), identity(4)), (identity(4), identity(4)))
        with pytest.raises(ValueError):
            decide_edl(tokens, SolverConfig(max_length=1))

    def test_requires_two_tokens(self):
        with pytest.raises(ValueError):
            decide_edl(
                ((identity(4), identity(4)),),
                SolverConfig(max_length=1, alphabet=self.alphabet),
            )


class TestGtcp:
    spec = interval_generators(4, 1, 3)

    def samples_for(self, endos, r, ps):
        u, v, w = endos
        return tuple(
            (
                rewrite(
                    compose_all(
                        [apply_endo(u, r), apply_endo(v, p), apply_endo(w, invert(r))]
                    )
                ),
                p,
            )
            for p in ps
        )

    @pytest.mark.parametrize(
        "mode", ["pairwise-ce1", "pairwise-ce2", "centralizer-ce3", "centralizer-ce4"]
    )
    def test_inner_endos(self, mode):
        endos = (
            inner_endo(generator(4, 1)),
            IDENTITY_ENDO,
            inner_endo(generator(4, 2)),
        )
        r = BraidWord(4, (2, 1))
        ps = (generator(4, 1), generator(4, 3), BraidWord(4, (2, 3)))
        samples = self.samples_for(endos, r, ps)
        report = solve_gtcp(
            samples, endos, mode, self.spec, SolverConfig(max_length=2), oracle_r=r
        )
        assert report.success
        assert report.harness_verdict is True

    @pytest.mark.parametrize("mode", ["pairwise-ce1", "pairwise-ce2"])
    def test_shift_endos(self, mode):
        endos = (SHIFT_ENDO, IDENTITY_ENDO, SHIFT_ENDO)
        r = BraidWord(4, (1, 3))
        ps = (generator(4, 1), generator(4, 2), BraidWord(4, (3, 2)))
        samples = self.samples_for(endos, r, ps)
        report = solve_gtcp(
            samples, endos, mode, self.spec, SolverConfig(max_length=2), oracle_r=r
        )
        assert report.success
        assert report.harness_verdict is True

    def test_identity_endos_specialize_to_plain_conjugacy(self):
        endos = (IDENTITY_ENDO, IDENTITY_ENDO, IDENTITY_ENDO)
        r = generator(4, 2)
        ps = (generator(4, 1), generator(4, 3))
        samples = self.samples_for(endos, r, ps)
        # y_i = r.p_i.r^-1 exactly: every token must be a plain conjugate.
        for y, p in samples:
            assert words_equal(y, compose_all([r, p, invert(r)]))
        report = solve_gtcp(
            samples, endos, "pairwise-ce1", self.spec, SolverConfig(max_length=1),
            oracle_r=r,
        )
        assert report.success and report.harness_verdict is True

    def test_failure_when_secret_out_of_reach(self):
        endos = (
            inner_endo(generator(4, 1)),
            IDENTITY_ENDO,
            inner_endo(generator(4, 2)),
        )
        r = BraidWord(4, (1, 2, 1, 2))
        ps = (generator(4, 1), generator(4, 3))
        samples = self.samples_for(endos, r, ps)
        report = solve_gtcp(
            samples, endos, "pairwise-ce1", self.spec, SolverConfig(max_length=1)
        )
        assert not report.success


class TestDehornoyAttacks:
    def test_pair_attack_recovers_secret(self):
        import random

        keys = dehornoy_keygen(strands=4, secret_length=3, base_length=3, seed=0)
        gens = [generator(4, i) for i in range(1, 4)]
        r = random_word(gens, 3, random.Random("nonce:0"))
        x, x_prime = dehornoy_commit(keys, r)
        response = dehornoy_respond(keys, r, challenge=1)
        report = attack_dehornoy_pair(
            x,
            x_prime,
            keys.base,
            keys.public_key,
            response,
            SolverConfig(
                max_length=3, alphabet=interval_generators(4, 1, 3), budget=500_000
            ),
            oracle_s=keys.secret,
        )
        assert report.success
        assert report.harness_verdict is True
        s_cand = report.recovered_dict()["s-candidate"]
        assert words_equal(shifted_conjugate(s_cand, keys.base), keys.public_key)

    def test_pair_attack_flags_degenerate_keys(self):
        base = BraidWord(3, (1, 2))
        keys = DehornoyKeys(3, base, base, identity(3))
        x, x_prime = dehornoy_commit(keys, generator(3, 1))
        report = attack_dehornoy_pair(
            x,
            x_prime,
            base,
            base,
            identity(3),
            SolverConfig(max_length=1, alphabet=interval_generators(3, 1, 2)),
        )
        assert not report.success
        assert report.checks[0].name == "informative-instance"
        assert not report.checks[0].passed

    def test_centralizer_attack_recovers_nonce(self):
        r_spec = interval_generators(4, 1, 2)
        base = BraidWord(4, (3, 1))
        r = BraidWord(4, (1, 2))
        commitment = rewrite(shifted_conjugate(r, base))
        report = attack_dehornoy_centralizer(
            r_spec,
            base,
            commitment,
            SolverConfig(max_length=2),
            oracle_r=r,
        )
        assert report.success
        assert report.harness_verdict is True

    def test_centralizer_attack_trivial_nonce(self):
        r_spec = interval_generators(4, 1, 2)
        base = BraidWord(4, (2, 3))
        commitment = rewrite(shifted_conjugate(identity(4), base))
        report = attack_dehornoy_centralizer(
            r_spec, base, commitment, SolverConfig(max_length=1), oracle_r=identity(4)
        )
        assert report.success and report.harness_verdict is True


class TestPartialFactor:
    head_alphabet = interval_generators(6, 4, 5)

    def test_exact_peel(self):
        h = generator(6, 5)
        z = BraidWord(6, (1, 2, 1))
        token = rewrite(compose(h, z))
        probe = generator(6, 4)
        (result,) = partial_factor_attack(
            token, (probe,), SolverConfig(max_length=1, alphabet=self.head_alphabet)
        )
        assert result.certificate_product
        assert result.certificate_commute
        assert elements_commute(result.residual, probe)
        assert words_equal(
            compose(rewrite(compose(token, invert(result.residual))), result.residual),
            token,
        )

    def test_trivial_base_gives_trivial_residual(self):
        h = BraidWord(6, (5, 4))
        token = rewrite(h)
        probe = generator(6, 4)
        results = partial_factor_attack(
            token,
            (probe,),
            SolverConfig(max_length=2, alphabet=self.head_alphabet),
            depth=3,
        )
        assert all(r.certificate_product for r in results)
        assert is_trivial(results[-1].residual)

    def test_unsolved_probe_reported(self):
        token = BraidWord(6, (1, 2))
        probe = generator(6, 1)
        (result,) = partial_factor_attack(
            token,
            (probe,),
            SolverConfig(max_length=1, alphabet=self.head_alphabet),
        )
        assert result.residual is None
        assert not result.certificate_product

    def test_complete_base_recovers_plant(self):
        h = generator(6, 5)
        z_bar = generator(6, 1)
        residual = generator(6, 2)
        token = rewrite(compose_all([h, z_bar, residual]))
        full = complete_base(
            token,
            residual,
            self.head_alphabet,
            interval_generators(6, 1, 2),
            head_max_length=1,
            tail_max_length=1,
        )
        assert full is not None
        assert words_equal(full, compose(z_bar, residual))

    def test_complete_base_none_when_budget_short(self):
        h = generator(6, 5)
        token = rewrite(compose_all([h, generator(6, 1), generator(6, 2)]))
        full = complete_base(
            token,
            generator(6, 2),
            self.head_alphabet,
            interval_generators(6, 1, 2),
            head_max_length=1,
            tail_max_length=0,
        )
        assert full is None
