"""Command-line front end.

Subcommands: encrypt, decrypt, subkeys, fitness, bruteforce, landscape,
compare. Exit code 0 on success, 1 with a one-line diagnostic on failure,
2 for usage errors (argparse's convention).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from . import experiments, ngrams, sdes, search


def _read_input(args) -> bytes:
    if getattr(args, "block", None) is not None:
        return args.block
    if getattr(args, "hex", None) is not None:
        return bytes.fromhex(args.hex)
    if getattr(args, "infile", None) is not None:
        return open(args.infile, "rb").read()
    raise ValueError("no input given: use --block, --hex or --infile")


def _write_output(args, data: bytes) -> None:
    if getattr(args, "out_file", None):
        with open(args.out_file, "wb") as fh:
            fh.write(data)
    else:
        print(data.hex())


def _model_for(args) -> ngrams.FrequencyModel:
    if args.table:
        return ngrams.load_model(args.table)
    if args.model == "language":
        return ngrams.load_english_model()
    if not args.plaintext_file:
        raise ValueError("plaintext-derived model needs --plaintext-file")
    return ngrams.derive_model(open(args.plaintext_file, "rb").read())


def _weights(args) -> ngrams.FitnessWeights:
    return ngrams.FitnessWeights(args.alpha, args.beta)


def cmd_encrypt(args) -> int:
    sboxes = sdes.get_preset(args.sbox)
    if args.block is not None:
        print(sdes.encrypt_block(args.block, args.key, sboxes))
        return 0
    _write_output(args, sdes.encrypt_bytes(_read_input(args), args.key, sboxes))
    return 0


def cmd_decrypt(args) -> int:
    sboxes = sdes.get_preset(args.sbox)
    if args.block is not None:
        print(sdes.decrypt_block(args.block, args.key, sboxes))
        return 0
    _write_output(args, sdes.decrypt_bytes(_read_input(args), args.key, sboxes))
    return 0


def cmd_subkeys(args) -> int:
    k1, k2 = sdes.key_schedule(args.key)
    print(f"K1={k1} K2={k2}")
    return 0


def cmd_fitness(args) -> int:
    value = ngrams.fitness(args.key, _read_input(args), _model_for(args),
                           _weights(args), sdes.get_preset(args.sbox))
    print(repr(value))
    return 0


def cmd_bruteforce(args) -> int:
    objective = ngrams.make_objective(_read_input(args), _model_for(args),
                                      _weights(args), sdes.get_preset(args.sbox))
    result = search.brute_force(objective)
    if args.csv:
        import csv

        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["key", "fitness"])
            for key in range(sdes.KEY_SPACE):
                writer.writerow([format(key, f"0{sdes.KEY_BITS}b"),
                                 repr(float(result.fitnesses[key]))])
    keys = ",".join(format(k, f"0{sdes.KEY_BITS}b") for k in result.argmin_keys)
    print(f"min_fitness={result.min_fitness!r} keys={keys}")
    return 0


def _build_config(args, overrides: dict) -> experiments.ExperimentConfig:
    if args.config:
        base = experiments.ExperimentConfig.from_json(args.config)
    else:
        base = experiments.ExperimentConfig()
    effective = {k: v for k, v in overrides.items() if v is not None}
    return dataclasses.replace(base, **effective) if effective else base


def cmd_compare(args) -> int:
    weights = None
    if args.alpha is not None or args.beta is not None:
        weights = ngrams.FitnessWeights(
            1.0 if args.alpha is None else args.alpha,
            1.0 if args.beta is None else args.beta,
        )
    sizes = None
    if args.sizes:
        sizes = tuple(int(s) for s in args.sizes.split(","))
    config = _build_config(args, {
        "base_seed": args.seed, "runs": args.runs, "sizes": sizes,
        "model_mode": args.model, "sbox_preset": args.sbox,
        "corpus_path": args.corpus, "weights": weights, "workers": args.workers,
    })
    summary = experiments.run_comparison(config, args.out)
    for stats in summary.stats:
        print(f"{stats.algorithm} size={stats.text_size} mean={stats.mean_matched:.2f} "
              f"sd={stats.std_matched:.2f} best={stats.best_matched}")
    means = " ".join(f"{alg}={mean:.3f}" for alg, mean in sorted(summary.grand_mean.items()))
    print(f"grand means: {means}")
    print(f"wrote {args.out}/runs.csv, summary.csv, metadata.json")
    return 0


def cmd_landscape(args) -> int:
    config = _build_config(args, {
        "base_seed": args.seed, "model_mode": args.model,
        "sbox_preset": args.sbox, "corpus_path": args.corpus,
        "reference_key_count": args.refs, "landscape_text_size": args.size,
    })
    files = experiments.run_landscape_campaign(config, args.out)
    print(f"wrote {len(files)} scan files and fdc_summary.csv to {args.out}")
    return 0


def _bits_arg(width):
    def parse(value):
        if len(value) != width or set(value) - {"0", "1"}:
            raise argparse.ArgumentTypeError(f"need {width} chars of 0/1, got {value!r}")
        return value
    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sdeslab",
                                     description="SDES cryptanalysis workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_sbox(p):
        p.add_argument("--sbox", choices=sorted(sdes.PRESETS), default="paper")

    def add_io(p):
        p.add_argument("--block", type=_bits_arg(sdes.BLOCK_BITS),
                       help="single 8-bit block as a bit-string")
        p.add_argument("--hex", help="input bytes as hex")
        p.add_argument("--infile", help="input bytes from a file")
        p.add_argument("--out-file", help="write raw output bytes here instead of hex")

    def add_model(p):
        p.add_argument("--model", choices=["plaintext", "language"], default="plaintext")
        p.add_argument("--plaintext-file", help="plaintext for the derived model")
        p.add_argument("--table", help="frequency table file overriding --model")
        p.add_argument("--alpha", type=float, default=1.0)
        p.add_argument("--beta", type=float, default=1.0)

    for name, fn in [("encrypt", cmd_encrypt), ("decrypt", cmd_decrypt)]:
        p = sub.add_parser(name, help=f"{name} a block or byte stream")
        p.add_argument("--key", type=_bits_arg(sdes.KEY_BITS), required=True)
        add_io(p)
        add_sbox(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("subkeys", help="print the two round keys")
    p.add_argument("--key", type=_bits_arg(sdes.KEY_BITS), required=True)
    p.set_defaults(fn=cmd_subkeys)

    p = sub.add_parser("fitness", help="score one key against a ciphertext")
    p.add_argument("--key", type=_bits_arg(sdes.KEY_BITS), required=True)
    add_io(p)
    add_model(p)
    add_sbox(p)
    p.set_defaults(fn=cmd_fitness)

    p = sub.add_parser("bruteforce", help="evaluate all 1024 keys")
    add_io(p)
    add_model(p)
    add_sbox(p)
    p.add_argument("--csv", help="also write per-key fitness rows here")
    p.set_defaults(fn=cmd_bruteforce)

    p = sub.add_parser("compare", help="run the RS-vs-GA campaign")
    p.add_argument("--out", required=True)
    p.add_argument("--config", help="JSON file with ExperimentConfig fields")
    p.add_argument("--seed", type=int)
    p.add_argument("--runs", type=int)
    p.add_argument("--sizes", help="comma-separated text sizes")
    p.add_argument("--model", choices=["plaintext", "language"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--sbox", choices=sorted(sdes.PRESETS))
    p.add_argument("--corpus")
    p.add_argument("--workers", type=int)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("landscape", help="run the landscape scan campaign")
    p.add_argument("--out", required=True)
    p.add_argument("--config", help="JSON file with ExperimentConfig fields")
    p.add_argument("--seed", type=int)
    p.add_argument("--refs", type=int, help="number of reference keys")
    p.add_argument("--size", type=int, help="text size in letters")
    p.add_argument("--model", choices=["plaintext", "language"])
    p.add_argument("--sbox", choices=sorted(sdes.PRESETS))
    p.add_argument("--corpus")
    p.set_defaults(fn=cmd_landscape)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
