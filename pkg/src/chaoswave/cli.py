"""Command-line front end.  Every subcommand is a thin wrapper over library calls."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import metrics, plots
from .chaos import ParameterError
from .keyfile import KeyFileError, fresh_key, read_key, write_key
from .pgm import PgmError, read_pgm, write_pgm
from .pipeline import CipherBlob, ContainerError, decrypt, encrypt, normalize_for_display, shuffled_preview
from .wavelet import ShapeError

KEY_ENV = "CHAOSWAVE_KEY"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_KEY_MISSING = 3
EXIT_KEY_INVALID = 4
EXIT_INPUT_INVALID = 5
EXIT_IO = 6


class CliError(Exception):
    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


def _key_path(args) -> Path:
    path = args.key or os.environ.get(KEY_ENV)
    if not path:
        raise CliError(f"no key given: pass --key or set {KEY_ENV}", EXIT_KEY_MISSING)
    path = Path(path)
    if not path.is_file():
        raise CliError(f"key file not found: {path}", EXIT_KEY_MISSING)
    return path


def load_key(args):
    path = _key_path(args)
    try:
        return read_key(path)
    except KeyFileError as exc:
        raise CliError(f"invalid key file {path}: {exc}", EXIT_KEY_INVALID) from None


def _need_input(path) -> Path:
    if path is None:
        raise CliError("--in is required", EXIT_USAGE)
    path = Path(path)
    if not path.is_file():
        raise CliError(f"input not found: {path}", EXIT_IO)
    return path


def _need_output(path) -> Path:
    if path is None:
        raise CliError("--out is required", EXIT_USAGE)
    return Path(path)


def cmd_encrypt(args):
    src, dst = _need_input(args.inp), _need_output(args.out)
    key = load_key(args)
    blob = encrypt(read_pgm(src), key)
    dst.write_bytes(blob.to_bytes())


def cmd_decrypt(args):
    src, dst = _need_input(args.inp), _need_output(args.out)
    key = load_key(args)
    blob = CipherBlob.from_bytes(src.read_bytes())
    write_pgm(decrypt(blob, key), dst)


def cmd_preview(args):
    src, dst = _need_input(args.inp), _need_output(args.out)
    key = load_key(args)
    write_pgm(normalize_for_display(shuffled_preview(read_pgm(src), key)), dst)


def cmd_keygen(args):
    write_key(fresh_key(), _need_output(args.out))


def cmd_analyze(args):
    src, outdir = _need_input(args.inp), _need_output(args.out)
    plain = read_pgm(src)
    key = load_key(args) if (args.key or os.environ.get(KEY_ENV) or not args.cipher) else None
    if args.cipher:
        blob = CipherBlob.from_bytes(_need_input(args.cipher).read_bytes())
        if (blob.M, blob.N) != plain.shape:
            raise CliError(f"cipher is {blob.M}x{blob.N} but plain image is {plain.shape[0]}x{plain.shape[1]}",
                           EXIT_INPUT_INVALID)
    else:
        blob = encrypt(plain, key)

    stem = src.stem
    reports = [
        metrics.build_report(f"{stem}:plain", plain, plain, seed=args.seed),
        metrics.cipher_report(plain, blob, label=f"{stem}:cipher", seed=args.seed),
    ]
    if key is not None:
        rep = metrics.key_sensitivity(plain, key, 1e-14, seed=args.seed)
        rep.label = f"{stem}:wrong_key"
        reports.append(rep)

    outdir.mkdir(parents=True, exist_ok=True)
    if args.format == "json":
        (outdir / "report.json").write_text(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    else:
        (outdir / "report.csv").write_text(metrics.reports_to_csv(reports))

    cipher_plane = blob.display_plane()
    hist = {"plain": metrics.histogram(plain).counts, "cipher": metrics.histogram(blob.payload).counts}
    for name, counts in hist.items():
        (outdir / f"histogram_{name}.csv").write_text(metrics.histogram_csv(counts))
    for direction in metrics.DIRECTIONS:
        pairs = {
            "plain": metrics.sample_adjacent_pairs(plain, direction, 1000, args.seed),
            "cipher": metrics.sample_adjacent_pairs(cipher_plane, direction, 1000, args.seed),
        }
        for name, p in pairs.items():
            (outdir / f"pairs_{direction}_{name}.csv").write_text(metrics.pairs_csv(p))
        if not args.no_figures:
            plots.scatter_figure(pairs, direction, outdir / f"scatter_{direction}.png")
    if not args.no_figures:
        plots.histogram_figure(hist, outdir / "histograms.png")

    for r in reports:
        corr = " ".join(f"{d[0]}={v:+.4f}" for d, v in r.correlation.items())
        print(f"{r.label}: entropy={r.entropy:.4f} npcr={r.npcr:.4f} {corr}")


COMMANDS = {
    "encrypt": cmd_encrypt,
    "decrypt": cmd_decrypt,
    "analyze": cmd_analyze,
    "keygen": cmd_keygen,
    "preview": cmd_preview,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chaoswave", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--out", help="output file (directory for analyze)")
        if name == "keygen":
            continue
        p.add_argument("--in", dest="inp", help="input PGM, or cipher blob for decrypt")
        p.add_argument("--key", help=f"key file (falls back to ${KEY_ENV})")
        if name == "analyze":
            p.add_argument("--cipher", help="existing cipher blob; encrypted on the fly when omitted")
            p.add_argument("--seed", type=int, default=0, help="pair-sampling seed")
            p.add_argument("--format", choices=("json", "csv"), default="json")
            p.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    return parser


def run(args) -> int:
    try:
        COMMANDS[args.command](args)
    except CliError as exc:
        print(f"chaoswave: {exc}", file=sys.stderr)
        return exc.status
    except (PgmError, ContainerError, ShapeError) as exc:
        print(f"chaoswave: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT_INVALID
    except ParameterError as exc:
        print(f"chaoswave: invalid key: {exc}", file=sys.stderr)
        return EXIT_KEY_INVALID
    except OSError as exc:
        print(f"chaoswave: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None) -> int:
    return run(build_parser().parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
