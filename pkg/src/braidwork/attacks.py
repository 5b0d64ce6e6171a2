"""
End-to-end attack pipelines: decomposition key recovery, exponent-based
key recovery, a one-sided common-factor decision procedure, twisted
conjugacy recovery, shifted-conjugacy authentication attacks, and
partial-factor peeling.

Every pipeline returns an AttackReport. Success is claimed only when all
public consistency checks pass; the harness verdict (comparison against a
supplied secret) is informational and never gates success. Solvers return
solutions only up to centralizer factors, so each pipeline re-validates
candidates against public relations before assembling a key.
"""

from __future__ import annotations

import dataclasses
import itertools

from .extractors import (
    CspInstance,
    build_dehornoy_centralizer_instance,
    build_gtcp_instances,
    build_mscsp_dhdp,
    ce_difference_pair,
)
from .garside import is_trivial, rewrite, words_equal
from .handle import ReductionBudgetExceeded, shift_preimage
from .protocols import PublicTranscript, SecretTranscript
from .solvers import (
    SolutionReport,
    SolverConfig,
    solve_exhaustive,
    solve_length_descent,
    solve_power,
    verify_solution,
)
from .subgroups import (
    SubgroupSpec,
    centralizer_search,
    elements_commute,
    interval_generators,
)
from .words import (
    BraidWord,
    Endomorphism,
    apply_endo,
    compose,
    compose_all,
    enumerate_products,
    generator,
    identity,
    invert,
    power,
    shift,
    shifted_conjugate,
)


@dataclasses.dataclass(frozen=True)
class NamedCheck:
    name: str
    passed: bool


@dataclasses.dataclass(frozen=True)
class AttackReport:
    """Outcome of one attack pipeline run."""

    attack: str
    recovered: tuple[tuple[str, BraidWord], ...]
    checks: tuple[NamedCheck, ...]
    solver_reports: tuple[SolutionReport, ...]
    harness_verdict: bool | None = None
    timings_ms: tuple[tuple[str, float], ...] = ()

    @property
    def success(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def recovered_dict(self) -> dict[str, BraidWord]:
        return dict(self.recovered)

    def to_record(self, include_timings: bool = False) -> dict:
        return {
            "attack": self.attack,
            "recovered": {name: w.to_record() for name, w in self.recovered},
            "checks": [{"name": c.name, "pass": c.passed} for c in self.checks],
            "harness_verdict": self.harness_verdict,
            "solver_reports": [r.to_record() for r in self.solver_reports],
            "timings_ms": dict(self.timings_ms) if include_timings else {},
        }


def _solve(instance: CspInstance, config: SolverConfig, method: str) -> SolutionReport:
    if method == "exhaustive":
        return solve_exhaustive(instance, config)
    if method == "descent":
        return solve_length_descent(instance, config)
    raise ValueError(f"unknown solver method {method!r}")


def attack_decomposition(
    transcript: PublicTranscript,
    config: SolverConfig,
    party: str = "a",
    method: str = "exhaustive",
    oracle: SecretTranscript | None = None,
) -> AttackReport:
    """
    Key recovery against a decomposition-style key agreement.

    Extracts two conjugacy instances from the attacked party's token (one
    per secret side), solves them, and strips the public base z to get
    candidates (left, right). Public checks: the candidates rebuild the
    token around z, and each commutes with the peer's matching subgroup;
    those conditions alone force the assembled key to equal the shared one.
    When the right-side solver fails, the right candidate is derived from
    the left one and the token (the unique value rebuilding the token),
    and the same checks still apply.
    """
    if party not in ("a", "b"):
        raise ValueError(f"party must be 'a' or 'b', got {party!r}")
    cfg = transcript.config
    z = cfg.base if len(cfg.base) else identity(cfg.strands)
    if party == "a":
        left_target, right_target = "a", "b"
        own_token, peer_token = transcript.token_a, transcript.token_b
        peer_left, peer_right = cfg.left_b, cfg.right_b
        true_key = oracle.kappa if oracle is not None else None
    else:
        left_target, right_target = "c", "d"
        own_token, peer_token = transcript.token_b, transcript.token_a
        peer_left, peer_right = cfg.left_a, cfg.right_a
        true_key = oracle.kappa if oracle is not None else None

    inst_left = build_mscsp_dhdp(transcript, left_target)
    inst_right = build_mscsp_dhdp(transcript, right_target)
    rep_left = _solve(inst_left, config, method)
    reports = [rep_left]

    checks: list[NamedCheck] = []
    recovered: list[tuple[str, BraidWord]] = []
    verdict: bool | None = None

    if not rep_left.solved:
        checks.append(NamedCheck("left-instance-solved", False))
        return AttackReport(
            "decomposition", tuple(recovered), tuple(checks), tuple(reports)
        )
    checks.append(NamedCheck("left-instance-solved", True))
    g_left = rep_left.solution
    left_cand = rewrite(compose(g_left, invert(z)))

    right_cand: BraidWord | None = None
    if method == "exhaustive":
        rep_right = _solve(inst_right, config, method)
        reports.append(rep_right)
        if rep_right.solved:
            # right solver returns the w.z^-1 coset for the inverted secret
            right_cand = rewrite(invert(compose(rep_right.solution, z)))
            if not words_equal(
                compose_all([left_cand, z, right_cand]), own_token
            ):
                right_cand = None  # inconsistent with the left solution
    if right_cand is None:
        # unique right candidate rebuilding the token from the left one:
        # the left solution is left_cand.z, so right = solution^-1 . token
        right_cand = rewrite(compose(invert(g_left), own_token))

    recovered.append(("left-candidate", left_cand))
    recovered.append(("right-candidate", right_cand))

    checks.append(
        NamedCheck(
            "token-reconstruction",
            words_equal(compose_all([left_cand, z, right_cand]), own_token),
        )
    )
    checks.append(
        NamedCheck(
            "left-commutes-with-peer-left",
            all(elements_commute(left_cand, g) for g in peer_left.generators),
        )
    )
    checks.append(
        NamedCheck(
            "right-commutes-with-peer-right",
            all(elements_commute(right_cand, g) for g in peer_right.generators),
        )
    )

    key_cand = rewrite(compose_all([left_cand, peer_token, right_cand]))
    recovered.append(("key-candidate", key_cand))
    if true_key is not None:
        verdict = words_equal(key_cand, true_key)
    return AttackReport(
        "decomposition", tuple(recovered), tuple(checks), tuple(reports), verdict
    )


def attack_stickel(
    a: BraidWord,
    b: BraidWord,
    token_a: BraidWord,
    token_b: BraidWord,
    exponent_bound: int,
    oracle: SecretTranscript | None = None,
) -> AttackReport:
    """
    Key recovery against the commuting-powers scheme with tokens of the
    form a^r.b^s: recover a^r by exponent search on a conjugacy pair, read
    off b^s as the quotient, and assemble the shared key around the peer
    token.
    """
    from .extractors import build_stickel_instance

    inst = build_stickel_instance(a, b, token_a, alpha=1)
    rep = solve_power(inst, exponent_bound)
    checks: list[NamedCheck] = []
    recovered: list[tuple[str, BraidWord]] = []
    verdict: bool | None = None
    if not rep.solved:
        checks.append(NamedCheck("a-power-found", False))
        return AttackReport("stickel", (), tuple(checks), (rep,))
    checks.append(NamedCheck("a-power-found", True))
    a_pow = rep.solution

    # token = a^r.b^s, so the left quotient by the a-power is a b-power.
    quotient = compose(invert(a_pow), token_a)
    b_pow: BraidWord | None = None
    for e in range(-exponent_bound, exponent_bound + 1):
        if words_equal(quotient, power(b, e)):
            b_pow = power(b, e)
            break
    checks.append(NamedCheck("b-power-found", b_pow is not None))
    if b_pow is None:
        recovered.append(("a-power-candidate", a_pow))
        return AttackReport("stickel", tuple(recovered), tuple(checks), (rep,))

    checks.append(
        NamedCheck(
            "token-reconstruction", words_equal(compose(a_pow, b_pow), token_a)
        )
    )
    key_cand = rewrite(compose_all([a_pow, token_b, b_pow]))
    recovered.extend(
        [
            ("a-power-candidate", a_pow),
            ("b-power-candidate", b_pow),
            ("key-candidate", key_cand),
        ]
    )
    if oracle is not None:
        verdict = words_equal(key_cand, oracle.kappa)
    return AttackReport("stickel", tuple(recovered), tuple(checks), (rep,), verdict)


@dataclasses.dataclass(frozen=True)
class EdlDecision:
    """One-sided answer for a common-factor decision subset."""

    verdict: str  # "YES" | "NO-EVIDENCE"
    subset: tuple[int, ...]
    witnesses: tuple[BraidWord, BraidWord] | None
    solver_reports: tuple[SolutionReport, ...]
    verified: tuple[bool, ...] = ()

    def to_record(self) -> dict:
        return {
            "verdict": self.verdict,
            "subset": list(self.subset),
            "witnesses": (
                [w.to_record() for w in self.witnesses] if self.witnesses else None
            ),
            "solver_reports": [r.to_record() for r in self.solver_reports],
            "verified": list(self.verified),
        }


def decide_edl(
    tokens: tuple[tuple[BraidWord, BraidWord], ...],
    config: SolverConfig,
    subsets: tuple[tuple[int, ...], ...] | None = None,
    method: str = "exhaustive",
) -> tuple[EdlDecision, ...]:
    """
    Decide, one-sidedly, whether tokens y_i = u.x_i.v share a factor pair
    (u, v). Differences of two tokens cancel one factor, giving conjugacy
    pairs (x_i.x_j^-1, y_i.y_j^-1) for u and (x_i^-1.x_j, y_i^-1.y_j) for
    v^-1. A YES carries witnesses checked on every index of the subset;
    anything else is NO-EVIDENCE, never a proof of emptiness.
    """
    if len(tokens) < 2:
        raise ValueError("need at least two tokens")
    if config.alphabet is None:
        raise ValueError("decide_edl needs an explicit search alphabet")
    if subsets is None:
        subsets = (tuple(range(len(tokens))),)

    decisions: list[EdlDecision] = []
    for subset in subsets:
        if len(subset) < 2:
            raise ValueError(f"subset {subset} too small")
        u_pairs = []
        v_pairs = []
        for i, j in itertools.combinations(subset, 2):
            x_i, y_i = tokens[i]
            x_j, y_j = tokens[j]
            u_pairs.append(
                (
                    rewrite(ce_difference_pair(x_i, x_j, "left")),
                    rewrite(ce_difference_pair(y_i, y_j, "left")),
                )
            )
            v_pairs.append(
                (
                    rewrite(ce_difference_pair(x_i, x_j, "right")),
                    rewrite(ce_difference_pair(y_i, y_j, "right")),
                )
            )
        inst_u = CspInstance(tuple(u_pairs), config.alphabet, meta=(("extractor", "edl-u"),))
        inst_v = CspInstance(tuple(v_pairs), config.alphabet, meta=(("extractor", "edl-v"),))

        # A u-candidate pins the v-side: v = x0^-1.u^-1.y0. Verifying that
        # pair on the whole subset during the search keeps the answer sound
        # and finds witnesses even when the conjugacy solution is not unique.
        x0, y0 = tokens[subset[0]]

        def derive_v(u_cand: BraidWord) -> BraidWord:
            return compose_all([invert(x0), invert(u_cand), y0])

        def u_consistent(u_cand: BraidWord) -> bool:
            v_cand = derive_v(u_cand)
            return all(
                words_equal(
                    tokens[i][1], compose_all([u_cand, tokens[i][0], v_cand])
                )
                for i in subset
            )

        if method == "exhaustive":
            rep_u = solve_exhaustive(inst_u, config, extra_check=u_consistent)
        else:
            rep_u = _solve(inst_u, config, method)
        rep_v = _solve(inst_v, config, method)
        reports = (rep_u, rep_v)
        if not rep_u.solved or not u_consistent(rep_u.solution):
            decisions.append(EdlDecision("NO-EVIDENCE", subset, None, reports))
            continue
        u_cand = rep_u.solution
        v_cand = rewrite(derive_v(u_cand))
        verified = tuple(
            words_equal(
                tokens[i][1], compose_all([u_cand, tokens[i][0], v_cand])
            )
            for i in subset
        )
        decisions.append(
            EdlDecision("YES", subset, (u_cand, v_cand), reports, verified)
        )
    return tuple(decisions)


def _invert_endo_on(f: Endomorphism, candidate: BraidWord) -> BraidWord:
    """Pull a candidate back through an invertible token map."""
    if f.kind == "identity":
        return candidate
    if f.kind == "shift":
        return shift_preimage(candidate)
    assert f.conjugator is not None
    return compose_all([invert(f.conjugator), candidate, f.conjugator])


def solve_gtcp(
    samples: tuple[tuple[BraidWord, BraidWord], ...],
    endos: tuple[Endomorphism, Endomorphism, Endomorphism],
    mode: str,
    secret_spec: SubgroupSpec,
    config: SolverConfig,
    method: str = "exhaustive",
    centralizer_length: int = 1,
    sample_index: int = 0,
    oracle_r: BraidWord | None = None,
) -> AttackReport:
    """
    Recover the secret r behind tokens y_i = u(r).v(p_i).w(r^-1). The
    instance alphabet is the relevant map's image of the secret subgroup,
    so raw solutions pull back through the map literally. The recovered
    candidate must recompute every sample token to claim success.
    """
    u, v, w = endos
    inst = build_gtcp_instances(
        samples, endos, mode, secret_spec,
        centralizer_length=centralizer_length, sample_index=sample_index,
    )

    carrier_endo = u if mode in ("pairwise-ce1", "centralizer-ce3") else w

    def reproduces_samples(candidate: BraidWord) -> bool:
        raw = candidate
        if inst.post_transform is not None:
            raw = compose(candidate, inst.post_transform)
        try:
            r_c = _invert_endo_on(carrier_endo, rewrite(raw))
        except (ValueError, ReductionBudgetExceeded):
            return False
        return all(
            words_equal(
                compose_all(
                    [apply_endo(u, r_c), apply_endo(v, p), apply_endo(w, invert(r_c))]
                ),
                y,
            )
            for y, p in samples
        )

    if method == "exhaustive":
        rep = solve_exhaustive(inst, config, extra_check=reproduces_samples)
    else:
        rep = _solve(inst, config, method)
    checks: list[NamedCheck] = []
    recovered: list[tuple[str, BraidWord]] = []
    verdict: bool | None = None
    if not rep.solved:
        checks.append(NamedCheck("instance-solved", False))
        return AttackReport(f"gtcp-{mode}", (), tuple(checks), (rep,))
    checks.append(NamedCheck("instance-solved", True))

    # The enumerated raw word lies in the image alphabet of the map that
    # carries the secret for this mode (u for ce1/ce3, w for ce2/ce4).
    try:
        r_cand = rewrite(_invert_endo_on(carrier_endo, rep.raw_word))
    except (ValueError, ReductionBudgetExceeded):
        checks.append(NamedCheck("map-inverted", False))
        return AttackReport(f"gtcp-{mode}", (), tuple(checks), (rep,))
    checks.append(NamedCheck("map-inverted", True))
    recovered.append(("r-candidate", r_cand))

    for i, (y, p) in enumerate(samples):
        recomputed = compose_all(
            [apply_endo(u, r_cand), apply_endo(v, p), apply_endo(w, invert(r_cand))]
        )
        checks.append(NamedCheck(f"sample-{i}-reproduced", words_equal(recomputed, y)))
    if oracle_r is not None:
        verdict = words_equal(r_cand, oracle_r)
    return AttackReport(
        f"gtcp-{mode}", tuple(recovered), tuple(checks), (rep,), verdict
    )


def attack_dehornoy_centralizer(
    r_spec: SubgroupSpec,
    base: BraidWord,
    commitment: BraidWord,
    config: SolverConfig,
    probes: tuple[BraidWord, ...] | None = None,
    centralizer_length: int = 2,
    oracle_r: BraidWord | None = None,
) -> AttackReport:
    """
    Recover the nonce r behind a shifted-conjugacy commitment x = r*p when
    r comes from a published subgroup R. Probes commuting with R conjugate
    through x by d(p).sigma_1.d(r)^-1 only; searching the shifted R
    generators against the fixed public factor sigma_1^-1.d(p)^-1 makes
    the raw solution d(r), which unshifts to r.
    """
    n = commitment.strands
    if probes is None:
        ambient = interval_generators(r_spec.strands, 1, r_spec.strands - 1)
        report = centralizer_search(r_spec, centralizer_length, ambient)
        probes = tuple(p.embed(n) for p in report.elements if len(p) > 0)
    if not probes:
        raise ValueError("no probes available for the centralizer instance")
    inst = build_dehornoy_centralizer_instance(commitment, probes)

    shifted_spec = SubgroupSpec(
        f"d({r_spec.name})", n, tuple(shift(g) for g in r_spec.generators)
    )
    transform = invert(compose(shift(base), generator(n, 1)))
    solver_cfg = dataclasses.replace(
        config, alphabet=shifted_spec, transform=transform
    )
    rep = solve_exhaustive(inst, solver_cfg)

    checks: list[NamedCheck] = []
    recovered: list[tuple[str, BraidWord]] = []
    verdict: bool | None = None
    if not rep.solved:
        checks.append(NamedCheck("instance-solved", False))
        return AttackReport("dehornoy-centralizer", (), tuple(checks), (rep,))
    checks.append(NamedCheck("instance-solved", True))
    try:
        r_cand = rewrite(shift_preimage(rep.raw_word))
    except (ValueError, ReductionBudgetExceeded):
        checks.append(NamedCheck("unshifted", False))
        return AttackReport("dehornoy-centralizer", (), tuple(checks), (rep,))
    checks.append(NamedCheck("unshifted", True))
    recovered.append(("r-candidate", r_cand))
    checks.append(
        NamedCheck(
            "commitment-reproduced",
            words_equal(shifted_conjugate(r_cand, base), commitment),
        )
    )
    if oracle_r is not None:
        verdict = words_equal(r_cand, oracle_r)
    return AttackReport(
        "dehornoy-centralizer", tuple(recovered), tuple(checks), (rep,), verdict
    )


def attack_dehornoy_pair(
    commitment: BraidWord,
    commitment_prime: BraidWord,
    base: BraidWord,
    public_key: BraidWord,
    response: BraidWord,
    config: SolverConfig,
    oracle_s: BraidWord | None = None,
) -> AttackReport:
    """
    Full secret recovery from one authentication round: the two
    commitments x = r*p and x' = r*p' share the nonce r, so x.x'^-1 is the
    conjugate of d(p).d(p')^-1 by r. Solving that conjugacy pair gives r,
    and the challenge-1 response r*s then unwraps to the long-term secret
    s = unshift(r^-1.(r*s).d(r).sigma_1^-1).
    """
    if config.alphabet is None:
        raise ValueError("pair attack needs an explicit search alphabet")
    x_side = rewrite(ce_difference_pair(shift(base), shift(public_key), "left"))
    y_side = rewrite(ce_difference_pair(commitment, commitment_prime, "left"))

    checks: list[NamedCheck] = []
    recovered: list[tuple[str, BraidWord]] = []
    verdict: bool | None = None
    if is_trivial(x_side):
        checks.append(NamedCheck("informative-instance", False))
        return AttackReport("dehornoy-pair", (), tuple(checks), ())
    checks.append(NamedCheck("informative-instance", True))
    inst = CspInstance(
        ((x_side, y_side),), config.alphabet, meta=(("extractor", "dehornoy-pair"),)
    )

    def unwrap(r_cand: BraidWord) -> BraidWord:
        ds = compose_all(
            [
                invert(r_cand),
                response,
                shift(r_cand),
                invert(generator(response.strands, 1)),
            ]
        )
        return shift_preimage(ds)

    def consistent(r_cand: BraidWord) -> bool:
        try:
            s_cand = unwrap(r_cand)
        except (ValueError, ReductionBudgetExceeded):
            return False
        return words_equal(shifted_conjugate(s_cand, base), public_key)

    rep = solve_exhaustive(inst, config, extra_check=consistent)
    if not rep.solved:
        checks.append(NamedCheck("instance-solved", False))
        return AttackReport("dehornoy-pair", (), tuple(checks), (rep,))
    checks.append(NamedCheck("instance-solved", True))
    r_cand = rep.solution
    s_cand = rewrite(unwrap(r_cand))
    recovered.extend([("r-candidate", r_cand), ("s-candidate", s_cand)])
    checks.append(
        NamedCheck(
            "public-key-reproduced",
            words_equal(shifted_conjugate(s_cand, base), public_key),
        )
    )
    if oracle_s is not None:
        verdict = words_equal(s_cand, oracle_s)
    return AttackReport(
        "dehornoy-pair", tuple(recovered), tuple(checks), (rep,), verdict
    )


@dataclasses.dataclass(frozen=True)
class PartialFactorResult:
    """One peel step: probe, recovered head, and the residual base suffix."""

    probe: BraidWord
    solver_report: SolutionReport
    residual: BraidWord | None
    depth: int
    remaining_token: BraidWord | None
    certificate_product: bool = False
    certificate_commute: bool = False

    def to_record(self) -> dict:
        return {
            "probe": self.probe.to_record(),
            "solver_report": self.solver_report.to_record(),
            "residual": self.residual.to_record() if self.residual else None,
            "depth": self.depth,
            "remaining_token": (
                self.remaining_token.to_record() if self.remaining_token else None
            ),
            "certificate_product": self.certificate_product,
            "certificate_commute": self.certificate_commute,
        }


def partial_factor_attack(
    token: BraidWord,
    probes: tuple[BraidWord, ...],
    config: SolverConfig,
    depth: int = 1,
) -> list[PartialFactorResult]:
    """
    Peel partial base information off a token u = h.z (h in the search
    subgroup): conjugating a probe S by u and solving the conjugacy pair
    (S, u.S.u^-1) yields a head candidate s; the residual s^-1.u is the
    part of z commuting with S when the peel is exact. The product
    certificate s.residual = u holds by construction and is re-checked;
    the commutation certificate flags exact peels. Iteration repeats on
    u.residual^-1.
    """
    if config.alphabet is None:
        raise ValueError("partial-factor attack needs an explicit search alphabet")
    results: list[PartialFactorResult] = []
    for probe in probes:
        current = token
        for level in range(depth):
            out = rewrite(compose_all([current, probe, invert(current)]))
            inst = CspInstance(
                ((probe, out),),
                config.alphabet,
                meta=(("extractor", "partial-factor"), ("depth", str(level))),
            )
            rep = solve_exhaustive(inst, config)
            if not rep.solved:
                results.append(
                    PartialFactorResult(probe, rep, None, level, None)
                )
                break
            head = rep.solution
            residual = rewrite(compose(invert(head), current))
            cert_product = words_equal(compose(head, residual), current)
            cert_commute = elements_commute(residual, probe)
            nxt = rewrite(compose(current, invert(residual)))
            results.append(
                PartialFactorResult(
                    probe, rep, residual, level, nxt, cert_product, cert_commute
                )
            )
            if is_trivial(residual):
                break
            current = nxt
    return results


def complete_base(
    token: BraidWord,
    residual: BraidWord,
    head_alphabet: SubgroupSpec,
    tail_alphabet: SubgroupSpec,
    head_max_length: int,
    tail_max_length: int,
) -> BraidWord | None:
    """
    Brute-force completion of a peeled base: find the shortest tail word
    z_bar with token.residual^-1.z_bar^-1 expressible over the head
    alphabet (checked against an exhaustive head enumeration), and return
    the full base z_bar.residual. None when the budgets do not cover the
    complementary factor.
    """
    from .garside import nf_key

    n = max(token.strands, head_alphabet.strands, tail_alphabet.strands)
    head_keys = {
        nf_key(w, n) for w in enumerate_products(head_alphabet.generators, head_max_length)
    }
    peeled = compose(token, invert(residual))
    for z_bar in enumerate_products(tail_alphabet.generators, tail_max_length):
        if nf_key(compose(peeled, invert(z_bar)), n) in head_keys:
            return rewrite(compose(z_bar, residual))
    return None
