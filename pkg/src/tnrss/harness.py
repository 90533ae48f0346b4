"""Executable checks of the scheme's definitional properties.

Four suites cover what is mechanically checkable at desk scale:

* correctness — fresh and honestly redacted signatures verify, and a
  replayed document ID leaves the original verifying;
* transparency — the combiner's output signature is bit-identical to a
  fresh signature on the redacted set under the same document ID;
* threshold boundary — every (t-1)-subset of vote shares fails to forge a
  removed-block signature, every t-subset succeeds;
* replay enforcement — a second vote per (redactor, document ID) always
  aborts, across restarts included.

The multiple-redaction forgery is reproduced step by step as a
demonstration of why one-time redaction is mandatory: with replay
protection off, dividing two redacted signatures recovers a single
block's aggregate share, which recombines into a signature on a set that
was never signed or redacted.

Suites are driven by a caller-supplied seed and report deterministically:
name, trial count, failures, seed.  No wall-clock data enters the report
payload (it is tracked separately so reruns are byte-comparable).
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence

from . import shamir
from .core import (
    Document,
    PublicKey,
    RedactorKey,
    SecretKey,
    Signature,
    keygen,
    sign_with_did,
    verify,
)
from .curve import (
    BLS12_381,
    G1Element,
    G2Element,
    GROUP_ORDER,
    pairing,
    rand_scalar,
    scalar_from_bytes,
    scalar_to_bytes,
)
from .encoding import encode_block_input, hash_to_g1, new_document_id
from .errors import DeserializeError, DidReplayed
from .protocol import RedactorState, red_inf, run_redact


@dataclass
class SuiteReport:
    name: str
    seed: int
    trials: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0  # informational only; excluded from the JSON payload

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, detail: Optional[dict] = None):
        self.trials += 1
        if not ok:
            self.failures.append(detail or {})

    def to_dict(self) -> dict:
        return {"name": self.name, "trials": self.trials,
                "failures": self.failures, "seed": self.seed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.name}: {self.trials - len(self.failures)}"
                f"/{self.trials} trials ok (seed {self.seed})")


def _random_blocks(rng: random.Random, count: int, size: int = 16) -> frozenset:
    out = set()
    while len(out) < count:
        out.add(rng.getrandbits(8 * size).to_bytes(size, "big"))
    return frozenset(out)


def _random_subset(rng: random.Random, blocks, prob: float) -> frozenset:
    return frozenset(b for b in sorted(blocks) if rng.random() < prob)


def _instance_detail(tag: str, doc: Document, sig: Signature, **extra) -> dict:
    detail = {
        "stage": tag,
        "did": doc.did.hex(),
        "blocks": sorted(b.hex() for b in doc.blocks),
        "adm": sorted(b.hex() for b in doc.adm),
        "signature": sig.to_bytes().hex(),
    }
    detail.update(extra)
    return detail


# -- correctness ----------------------------------------------------------------


def run_correctness_suite(
    grid: Sequence[tuple] = ((1, 1), (2, 3), (3, 5)),
    sizes: Sequence[int] = (0, 1, 8, 16),
    trials: int = 3,
    seed: int = 0,
    tamper_hook: Optional[Callable] = None,
) -> SuiteReport:
    """Signing epochs over a (t, n) x |M| grid, checking both correctness
    clauses: fresh and redacted signatures verify, and replayed document
    IDs abort without disturbing the original."""
    report = SuiteReport("correctness", seed)
    started = time.perf_counter()
    rng = random.Random(seed)
    for t, n in grid:
        pk, sk, rks = keygen(t, n, rng)
        states = [RedactorState(rk) for rk in rks]
        for size in sizes:
            for epoch in range(trials):
                tag = f"t={t} n={n} |M|={size} epoch={epoch}"
                blocks = _random_blocks(rng, size)
                adm = _random_subset(rng, blocks, 0.3)
                doc, sig = sign_with_did(sk, blocks, adm,
                                         new_document_id(rng))
                if tamper_hook is not None:
                    sig = tamper_hook(tag, doc, sig)
                if not verify(pk, doc, sig):
                    report.record(False, _instance_detail(
                        f"fresh-verify {tag}", doc, sig))
                    continue
                votes = {rk.index: _random_subset(rng, doc.redactable(), 0.5)
                         for rk in rks}
                doc2, sig2 = run_redact(pk, doc, sig, votes, states)
                ok = verify(pk, doc2, sig2)
                replay_ok = True
                if n >= 1:
                    try:
                        red_inf(states[0], pk, doc, sig,
                                votes.get(1, frozenset()))
                        replay_ok = False
                    except DidReplayed:
                        pass
                still_ok = verify(pk, doc, sig)
                if ok and replay_ok and still_ok:
                    report.record(True)
                else:
                    report.record(False, _instance_detail(
                        f"redacted={ok} replay-abort={replay_ok} "
                        f"original-after-replay={still_ok} {tag}", doc, sig))
        for state in states:
            state.close()
    report.elapsed = time.perf_counter() - started
    return report


# -- transparency ----------------------------------------------------------------


def run_transparency_check(instances: int = 200, seed: int = 0) -> SuiteReport:
    """Redacted signatures must be bit-identical to fresh signatures on the
    redacted set under the same document ID."""
    report = SuiteReport("transparency", seed)
    started = time.perf_counter()
    rng = random.Random(seed)
    pk = sk = rks = None
    for k in range(instances):
        if k % 25 == 0:
            t = rng.randint(1, 4)
            n = rng.randint(t, 5)
            pk, sk, rks = keygen(t, n, rng)
        blocks = _random_blocks(rng, rng.randint(0, 8))
        adm = _random_subset(rng, blocks, 0.25)
        doc, sig = sign_with_did(sk, blocks, adm, new_document_id(rng))
        redactable = sorted(doc.redactable())
        style = k % 10
        if style == 0 or not redactable:
            votes = {rk.index: frozenset() for rk in rks}          # MOD = {}
        elif style == 1:
            votes = {rk.index: frozenset(redactable) for rk in rks}  # all of M \ ADM
        else:
            target = _random_subset(rng, redactable, 0.6)
            votes = {rk.index: (target if rng.random() < 0.8
                                else _random_subset(rng, redactable, 0.5))
                     for rk in rks}
        states = [RedactorState(rk) for rk in rks]
        doc2, sig2 = run_redact(pk, doc, sig, votes, states)
        fresh_doc, fresh_sig = sign_with_did(sk, doc2.blocks, doc2.adm, doc.did)
        same = (sig2.sigma_agg.to_bytes() == fresh_sig.sigma_agg.to_bytes()
                and sig2.sigma_fix.to_bytes() == fresh_sig.sigma_fix.to_bytes()
                and fresh_doc == doc2)
        report.record(same, None if same else _instance_detail(
            f"instance={k} removed={len(doc.blocks) - len(doc2.blocks)}",
            doc, sig))
    report.elapsed = time.perf_counter() - started
    return report


# -- threshold boundary ----------------------------------------------------------


def run_threshold_boundary_check(t: int, n: int, trials: int = 20,
                                 seed: int = 0) -> SuiteReport:
    """Every (t-1)-subset of shares must fail to redact; every t-subset
    must succeed.  Exhaustive over subsets."""
    from itertools import combinations

    report = SuiteReport(f"threshold-boundary t={t} n={n}", seed)
    started = time.perf_counter()
    rng = random.Random(seed)
    for trial in range(trials):
        pk, sk, rks = keygen(t, n, rng)
        blocks = _random_blocks(rng, 3)
        doc, sig = sign_with_did(sk, blocks, frozenset(), new_document_id(rng))
        target = sorted(doc.blocks)[0]
        states = [RedactorState(rk) for rk in rks]
        shares = {}
        for state in states:
            ri = red_inf(state, pk, doc, sig, {target})
            shares[state.key.index] = ri.shares[target]
        reduced = Document(doc.blocks - {target}, doc.adm, doc.did)
        ok = True
        for subset in combinations(sorted(shares), t):
            cand = shamir.reconstruct_in_exponent(shares, subset)
            sig2 = Signature(sig.sigma_fix, sig.sigma_agg / cand)
            if not verify(pk, reduced, sig2):
                ok = False
        if t > 1:
            for subset in combinations(sorted(shares), t - 1):
                cand = shamir.reconstruct_in_exponent(shares, subset)
                sig2 = Signature(sig.sigma_fix, sig.sigma_agg / cand)
                if verify(pk, reduced, sig2):
                    ok = False
        report.record(ok, None if ok else _instance_detail(
            f"trial={trial}", doc, sig))
    report.elapsed = time.perf_counter() - started
    return report


# -- replay enforcement ----------------------------------------------------------


def run_replay_enforcement_check(trials: int = 20, seed: int = 0,
                                 state_dir=None) -> SuiteReport:
    """Second vote per (redactor, document ID) must abort, including after
    a journal reload when a state directory is supplied."""
    report = SuiteReport("replay-enforcement", seed)
    started = time.perf_counter()
    rng = random.Random(seed)
    pk, sk, rks = keygen(2, 3, rng)

    def fresh_states():
        if state_dir is None:
            return [RedactorState(rk) for rk in rks]
        return [RedactorState.open(rk, state_dir) for rk in rks]

    states = fresh_states()
    docs = []
    for trial in range(trials):
        blocks = _random_blocks(rng, 3)
        doc, sig = sign_with_did(sk, blocks, frozenset(), new_document_id(rng))
        docs.append((doc, sig))
        mod = {sorted(doc.blocks)[0]}
        ok = True
        for state in states:
            red_inf(state, pk, doc, sig, mod)
        for state in states:
            try:
                red_inf(state, pk, doc, sig, mod)
                ok = False
            except DidReplayed:
                pass
        report.record(ok, None if ok else _instance_detail(
            f"trial={trial} (same-process)", doc, sig))
    if state_dir is not None:
        for state in states:
            state.close()
        states = fresh_states()  # simulated restart: journals reloaded
        for trial, (doc, sig) in enumerate(docs):
            ok = True
            for state in states:
                try:
                    red_inf(state, pk, doc, sig, frozenset())
                    ok = False
                except DidReplayed:
                    pass
            report.record(ok, None if ok else _instance_detail(
                f"trial={trial} (after-restart)", doc, sig))
        for state in states:
            state.close()
    report.elapsed = time.perf_counter() - started
    return report


# -- share reconstruction oracle --------------------------------------------------


def run_share_reconstruction_check(max_n: int = 6, seed: int = 0) -> SuiteReport:
    """Exponent reconstruction over every t-subset must equal h^f(0),
    exhaustively for all 1 <= t <= n <= max_n."""
    from itertools import combinations

    report = SuiteReport("share-reconstruction", seed)
    started = time.perf_counter()
    rng = random.Random(seed)
    for n in range(1, max_n + 1):
        for t in range(1, n + 1):
            poly = shamir.sample_polynomial(t, rng)
            h = BLS12_381.g1 ** rand_scalar(rng)
            expected = h ** shamir.evaluate(poly, 0)
            exp_shares = {s.index: h ** s.value
                          for s in shamir.make_shares(poly, n)}
            for subset in combinations(range(1, n + 1), t):
                got = shamir.reconstruct_in_exponent(exp_shares, subset)
                field_got = shamir.reconstruct_field(
                    {s.index: s.value for s in shamir.make_shares(poly, n)},
                    subset)
                ok = got == expected and h ** field_got == expected
                report.record(ok, None if ok else {
                    "stage": f"t={t} n={n} subset={subset}"})
    report.elapsed = time.perf_counter() - started
    return report


# -- pairing-layer sanity ----------------------------------------------------------


def run_group_sanity_check(samples: int = 100, seed: int = 0) -> SuiteReport:
    """Bilinearity, subgroup validity and serialization round-trips."""
    report = SuiteReport("group-sanity", seed)
    started = time.perf_counter()
    rng = random.Random(seed)
    g1, g2 = BLS12_381.g1, BLS12_381.g2
    base = pairing(g1, g2)
    for k in range(samples):
        x, y = rand_scalar(rng), rand_scalar(rng)
        a, b = g1 ** x, g2 ** y
        bilinear = pairing(a, b) == base ** (x * y % GROUP_ORDER)
        h = hash_to_g1(encode_block_input(bytes(32), k.to_bytes(4, "big")))
        subgroup_ok = (a._pt.in_subgroup() and b._pt.in_subgroup()
                       and h._pt.in_subgroup())
        s = rand_scalar(rng)
        round_trips = (G1Element.from_bytes(a.to_bytes()) == a
                       and G2Element.from_bytes(b.to_bytes()) == b
                       and scalar_from_bytes(scalar_to_bytes(s)) == s)
        sign_bit = (a.to_bytes() != a.inverse().to_bytes()
                    and b.to_bytes() != b.inverse().to_bytes())
        malformed = bytearray(a.to_bytes())
        malformed[0] &= 0x1F  # clear the compression flag
        try:
            G1Element.from_bytes(bytes(malformed))
            rejects = False
        except DeserializeError:
            rejects = True
        ok = bilinear and subgroup_ok and round_trips and sign_bit and rejects
        report.record(ok, None if ok else {
            "stage": f"sample={k}", "bilinear": bilinear,
            "subgroup": subgroup_ok, "round_trips": round_trips,
            "sign_bit": sign_bit, "rejects_malformed": rejects})
    report.elapsed = time.perf_counter() - started
    return report


# -- multiple-redaction forgery -----------------------------------------------------


@dataclass(frozen=True)
class AttackTranscript:
    """Step-by-step record of the multiple-redaction forgery attempt."""

    original: tuple                     # (Document, Signature)
    first: Optional[tuple]
    second: Optional[tuple]
    forged: Optional[tuple]
    verify_results: Mapping[str, bool]
    query_log: tuple                    # (blocks, adm, did) tuples observed
    forged_novel: Optional[bool]
    blocked_at: Optional[str]
    protected: bool

    @property
    def forgery_succeeded(self) -> bool:
        return (self.forged is not None
                and self.verify_results.get("forged", False)
                and bool(self.forged_novel))


DEMO_BLOCKS = (b"block-1", b"block-2", b"block-3")


def run_forgery_demo(pk: PublicKey, sk: SecretKey,
                     redactor_keys: Sequence[RedactorKey],
                     protected: bool = False,
                     mod1: Iterable[bytes] = (DEMO_BLOCKS[0],),
                     mod2: Iterable[bytes] = (DEMO_BLOCKS[1],),
                     seed: int = 0) -> AttackTranscript:
    """Replay the multiple-redaction forgery on M = {m1, m2, m3}, ADM = {}.

    With replay protection off (fresh redactor states per round) the
    recombined signature verifies on a set that was never produced by
    signing or redaction.  With protection on (shared states), the second
    round aborts per redactor and no novel forgery appears.
    """
    rng = random.Random(seed)
    mod1, mod2 = frozenset(mod1), frozenset(mod2)
    blocks = frozenset(DEMO_BLOCKS)
    doc, sig = sign_with_did(sk, blocks, frozenset(), new_document_id(rng))
    results = {"original": verify(pk, doc, sig)}
    query_log = [(doc.blocks, doc.adm, doc.did)]

    shared_states = [RedactorState(rk) for rk in redactor_keys]

    def states_for_round():
        if protected:
            return shared_states
        return [RedactorState(rk) for rk in redactor_keys]  # protection off

    votes1 = {rk.index: mod1 for rk in redactor_keys}
    doc1, sig1 = run_redact(pk, doc, sig, votes1, states_for_round())
    results["first"] = verify(pk, doc1, sig1)
    query_log.append((doc1.blocks, doc1.adm, doc1.did))

    votes2 = {rk.index: (mod2 & doc1.blocks) for rk in redactor_keys}
    round2_states = states_for_round()
    doc2, sig2 = run_redact(pk, doc1, sig1, votes2, round2_states)
    results["second"] = verify(pk, doc2, sig2)
    query_log.append((doc2.blocks, doc2.adm, doc2.did))

    if protected and doc2.blocks == doc1.blocks and mod2 & doc1.blocks:
        # every vote aborted on the replayed DID: the attack dies here
        return AttackTranscript(
            original=(doc, sig), first=(doc1, sig1), second=(doc2, sig2),
            forged=None, verify_results=results, query_log=tuple(query_log),
            forged_novel=None, blocked_at="second-redaction",
            protected=protected)

    # recover the aggregate share of the blocks removed in round one, then
    # splice it back onto the twice-redacted signature
    sigma_mod1 = sig.sigma_agg / sig1.sigma_agg
    forged_sig = Signature(sig.sigma_fix, sigma_mod1 * sig2.sigma_agg)
    forged_doc = Document(doc2.blocks | mod1, doc.adm, doc.did)
    results["forged"] = verify(pk, forged_doc, forged_sig)
    novel = (forged_doc.blocks, forged_doc.adm, forged_doc.did) not in query_log
    return AttackTranscript(
        original=(doc, sig), first=(doc1, sig1), second=(doc2, sig2),
        forged=(forged_doc, forged_sig), verify_results=results,
        query_log=tuple(query_log), forged_novel=novel, blocked_at=None,
        protected=protected)


# -- aggregate runner ------------------------------------------------------------


def run_all_suites(seed: int = 0, quick: bool = True) -> list:
    """The selftest battery.  ``quick`` scales trial counts down for the
    CLI; the acceptance test suite drives the full parameters directly."""
    scale = 1 if quick else 5
    reports = [
        run_group_sanity_check(samples=10 * scale, seed=seed),
        run_share_reconstruction_check(max_n=6, seed=seed),
        run_correctness_suite(trials=1 * scale, seed=seed),
        run_transparency_check(instances=10 * scale, seed=seed),
        run_threshold_boundary_check(2, 3, trials=2 * scale, seed=seed),
        run_threshold_boundary_check(3, 5, trials=1 * scale, seed=seed),
        run_replay_enforcement_check(trials=5 * scale, seed=seed),
    ]
    rng = random.Random(seed)
    pk, sk, rks = keygen(2, 3, rng)
    demo = run_forgery_demo(pk, sk, rks, protected=False, seed=seed)
    demo_report = SuiteReport("forgery-demo", seed)
    demo_report.record(demo.forgery_succeeded,
                       None if demo.forgery_succeeded else
                       {"stage": "unprotected demo failed to forge"})
    blocked = run_forgery_demo(pk, sk, rks, protected=True, seed=seed)
    demo_report.record(blocked.blocked_at == "second-redaction",
                       None if blocked.blocked_at else
                       {"stage": "protected demo was not blocked"})
    reports.append(demo_report)
    return reports
