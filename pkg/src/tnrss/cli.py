"""Command-line front end for the full signing / redaction lifecycle.

Exit codes are a stable contract:

    0  success (verify: accept)
    1  verify: reject, or a selftest/demo self-consistency failure
    2  usage and validation errors (bad parameters, replayed document ID,
       invalid vote set, malformed files)
    3  I/O failures
    4  cryptographic failures (signature rejected by a redactor, combine
       post-verification failed)
"""

from __future__ import annotations

import argparse
import hashlib
import secrets
import sys
from pathlib import Path

from . import fileio
from .core import Document, keygen, sign, verification_set, verify
from .encoding import PROFILE_ID
from .errors import (
    AdmNotSubset,
    BadSignature,
    BadSubset,
    CombineFailed,
    DeserializeError,
    DidReplayed,
    DuplicateRedactor,
    FileFormatError,
    InvalidMod,
    InvalidParams,
    InvalidRedactorIndex,
    InvalidThreshold,
    InvertZero,
    TooManyBlocks,
)
from .harness import run_all_suites, run_forgery_demo
from .protocol import RedactorState, red_inf, thr_red

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_CRYPTO = 4

_VALIDATION_ERRORS = (
    InvalidParams, InvalidThreshold, AdmNotSubset, TooManyBlocks,
    DidReplayed, InvalidMod, DuplicateRedactor, InvalidRedactorIndex,
    BadSubset, InvertZero, FileFormatError, DeserializeError, ValueError,
)
_CRYPTO_ERRORS = (BadSignature, CombineFailed)


def _fingerprint(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:16]


def _write(path: Path, data: bytes) -> None:
    path.write_bytes(data)
    print(f"wrote {path}  ({_fingerprint(data)})")


def cmd_keygen(args) -> int:
    pk, sk, rks = keygen(args.t, args.n)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write(out / "pk.tnr", fileio.public_key_to_bytes(pk))
    _write(out / "sk.tnr", fileio.secret_key_to_bytes(sk))
    for rk in rks:
        _write(out / f"rk-{rk.index}.tnr", fileio.redactor_key_to_bytes(rk))
    if args.with_verification_set:
        rvs = verification_set(rks)
        _write(out / "rvs.tnr", fileio.verification_set_to_bytes(rvs))
    return EXIT_OK


def cmd_sign(args) -> int:
    sk = fileio.secret_key_from_bytes(fileio.load_bytes(args.sk))
    docfile = fileio.DocumentFile.load(args.doc)
    doc, sig = sign(sk, docfile.blocks, docfile.adm_blocks(),
                    secrets.SystemRandom())
    out = fileio.DocumentFile.from_document(doc, sig)
    out.save(args.out)
    print(f"signed {len(doc.blocks)} blocks  did={doc.did.hex()}")
    return EXIT_OK


def _load_signed_document(path):
    docfile = fileio.DocumentFile.load(path)
    if docfile.signature is None:
        raise FileFormatError("document: missing signature")
    return docfile.to_document(), docfile.signature


def _parse_mod(spec: str, docfile: fileio.DocumentFile) -> frozenset:
    spec = spec.strip()
    if not spec:
        return frozenset()
    blocks = []
    for part in spec.split(","):
        try:
            idx = int(part)
        except ValueError as exc:
            raise FileFormatError(f"bad vote index {part!r}") from exc
        if not 0 <= idx < len(docfile.blocks):
            raise FileFormatError(f"vote index {idx} out of range")
        blocks.append(docfile.blocks[idx])
    return frozenset(blocks)


def cmd_redinf(args) -> int:
    pk = fileio.public_key_from_bytes(fileio.load_bytes(args.pk))
    rk = fileio.redactor_key_from_bytes(fileio.load_bytes(args.rk))
    docfile = fileio.DocumentFile.load(args.doc)
    doc, sig = _load_signed_document(args.doc)
    mod = _parse_mod(args.mod, docfile)
    state = RedactorState.open(rk, args.state)
    try:
        ri = red_inf(state, pk, doc, sig, mod)
    finally:
        state.close()
    Path(args.out).write_bytes(fileio.redaction_info_to_bytes(ri))
    print(f"redactor {rk.index} voted for {len(ri.shares)} block(s)")
    return EXIT_OK


def cmd_combine(args) -> int:
    pk = fileio.public_key_from_bytes(fileio.load_bytes(args.pk))
    doc, sig = _load_signed_document(args.doc)
    ri_set = [fileio.redaction_info_from_bytes(fileio.load_bytes(p))
              for p in args.ri]
    rvs = None
    if args.rvs:
        rvs = fileio.verification_set_from_bytes(fileio.load_bytes(args.rvs))
    doc2, sig2 = thr_red(pk, doc, sig, ri_set,
                         verification_set=rvs,
                         validate_shares=rvs is not None)
    fileio.DocumentFile.from_document(doc2, sig2).save(args.out)
    removed = len(doc.blocks) - len(doc2.blocks)
    print(f"removed {removed} block(s); {len(doc2.blocks)} remain")
    return EXIT_OK


def cmd_verify(args) -> int:
    pk = fileio.public_key_from_bytes(fileio.load_bytes(args.pk))
    doc, sig = _load_signed_document(args.doc)
    if verify(pk, doc, sig):
        print("accept")
        return EXIT_OK
    print("reject")
    return EXIT_REJECT


def _print_doc_line(label: str, doc: Document, ok: bool) -> None:
    blocks = ", ".join(b.decode("ascii", "backslashreplace")
                       for b in sorted(doc.blocks))
    print(f"{label:10s} M = [{blocks}]  verify = {int(ok)}")


def cmd_demo_forgery(args) -> int:
    pk, sk, rks = keygen(2, 3, _seeded_rng(args.seed))
    transcript = run_forgery_demo(pk, sk, rks, protected=args.protected,
                                  seed=args.seed)
    doc, _ = transcript.original
    mode = "ENABLED" if args.protected else "DISABLED"
    print(f"== multiple-redaction forgery demo (replay protection {mode}) ==")
    print(f"document ID: {doc.did.hex()}")
    _print_doc_line("original", doc, transcript.verify_results["original"])
    _print_doc_line("first", transcript.first[0], transcript.verify_results["first"])
    _print_doc_line("second", transcript.second[0], transcript.verify_results["second"])
    if transcript.blocked_at:
        print(f"second redaction aborted: every redactor refused the replayed "
              f"document ID (DidReplayed) -> attack blocked at {transcript.blocked_at}")
        return EXIT_OK
    forged_doc, _ = transcript.forged
    _print_doc_line("forged", forged_doc, transcript.verify_results["forged"])
    print("recombination: sigma_M1 = Sigma / Sigma'; Sigma* = sigma_M1 * Sigma''")
    if transcript.verify_results["forged"]:
        print("forged signature VERIFIES")
    print(f"novel tuple (never signed/redacted): {transcript.forged_novel}")
    if not args.protected and not transcript.forgery_succeeded:
        print("self-consistency failure: unprotected demo did not forge",
              file=sys.stderr)
        return EXIT_REJECT
    return EXIT_OK


def cmd_selftest(args) -> int:
    reports = run_all_suites(seed=args.seed)
    for r in reports:
        print(r.summary_line())
        print(r.to_json())
    if args.report_dir:
        from . import report as report_mod

        out = Path(args.report_dir)
        out.mkdir(parents=True, exist_ok=True)
        report_mod.write_csv(reports, out / "selftest.csv")
        report_mod.write_summary_json(reports, out / "selftest.json")
        for fig in report_mod.write_figures(reports, out):
            print(f"figure: {fig}", file=sys.stderr)
    all_pass = all(r.passed for r in reports)
    print("selftest:", "PASS" if all_pass else "FAIL")
    return EXIT_OK if all_pass else EXIT_REJECT


def _seeded_rng(seed: int):
    import random

    return random.Random(seed)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tnrss",
        description=f"t-out-of-n redactable signatures (profile {PROFILE_ID})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate signer and redactor keys")
    p.add_argument("--t", type=int, required=True, help="redaction threshold")
    p.add_argument("--n", type=int, required=True, help="number of redactors")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--with-verification-set", action="store_true",
                   help="also write per-redactor share commitments (rvs.tnr)")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("sign", help="sign a document file")
    p.add_argument("--sk", required=True)
    p.add_argument("--doc", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("redinf", help="produce one redactor's vote")
    p.add_argument("--pk", required=True)
    p.add_argument("--rk", required=True)
    p.add_argument("--doc", required=True)
    p.add_argument("--mod", required=True,
                   help="comma-separated block indices to remove ('' for none)")
    p.add_argument("--state", required=True,
                   help="directory holding this redactor's replay journal")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_redinf)

    p = sub.add_parser("combine", help="combine votes into a redacted document")
    p.add_argument("--pk", required=True)
    p.add_argument("--doc", required=True)
    p.add_argument("--ri", nargs="+", required=True)
    p.add_argument("--rvs", help="optional verification set for share pre-validation")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("verify", help="verify a signed document")
    p.add_argument("--pk", required=True)
    p.add_argument("--doc", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("demo", help="security demonstrations")
    demo_sub = p.add_subparsers(dest="demo", required=True)
    pf = demo_sub.add_parser("forgery",
                             help="multiple-redaction forgery walkthrough")
    pf.add_argument("--protected", action="store_true",
                    help="run with replay protection enabled")
    pf.add_argument("--seed", type=int, default=0)
    pf.set_defaults(func=cmd_demo_forgery)

    p = sub.add_parser("selftest", help="run the property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report-dir",
                   help="write CSV/JSON summaries and figures here")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CRYPTO_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CRYPTO
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
