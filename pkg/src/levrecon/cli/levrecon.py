#!/usr/bin/env python3
"""
Sequence reconstruction experiments, bounds and decoders.

Usage:
  levrecon table1 [-c CONFIG] [--samples=S] [--seed=SEED] [--workers=W] [--out=PATH] [--format=FMT] [-D]
  levrecon table2 [-c CONFIG] [--samples=S] [--seed=SEED] [--workers=W] [--out=PATH] [--format=FMT] [-D]
  levrecon simulate --n=LEN --e=E --l=L --N=CHANNELS [--metric=METRIC] [-c CONFIG] [--samples=S] [--seed=SEED]
                    [--workers=W] [--out=PATH] [--format=FMT] [-D]
  levrecon bounds --n=LEN --e=E --l=L [--h=H] [--a=A] [--R=R] [--M=M] [--N=CHANNELS] [--out=PATH] [-D]
  levrecon oracle --n=LEN --e=E --l=L --h=H [--out=PATH] [-D]
  levrecon transmit --n=LEN --e=E --l=L --N=CHANNELS [--model=MODEL] [--source=WORD] [-c CONFIG] [--seed=SEED]
                    [--out=PATH] [-D]
  levrecon decode --code=FILE --batch=FILE --method=METHOD [--a=A] [--R=R] [--D=FILE] [--out=PATH] [-D]
  levrecon majority --batch=FILE [--code=FILE] [--k=K] [--h-conf=H] [--out=PATH] [-D]

Options:
  -c CONFIG         : CONFIG を設定ファイルとして読み込んで実行します。[default: config.yaml]
  --samples=S       : モンテカルロ試行回数を指定します。（省略時は設定ファイルの値、なければ 100000）
  --seed=SEED       : マスターシードを指定します。（省略時は環境変数 LEVRECON_SEED、設定ファイルの順）
  --workers=W       : 並列ワーカー数を指定します。結果はワーカー数に依存しません。
  --out=PATH        : 結果を PATH に書き出します。（省略時は標準出力）
  --format=FMT      : 出力形式 csv / json を指定します。
  --n=LEN           : 符号長 n を指定します。
  --e=E             : 符号の誤り訂正能力 e を指定します。
  --l=L             : 超過誤り数 ℓ を指定します。（t = e + ℓ）
  --N=CHANNELS      : チャネル数 N を指定します。simulate ではカンマ区切りで複数指定できます。
  --metric=METRIC   : simulate の評価指標 equal / verifiable を指定します。[default: equal]
  --h=H             : 共通部分をとる符号語数 h を指定します。
  --a=A             : 打ち砕かれる集合を ℓ - a に縮める a を指定します。
  --R=R             : 被覆符号の被覆半径 R を指定します。
  --M=M             : 半径 e + a の球に含まれる符号語数の上限 M を指定します。
  --model=MODEL     : チャネルモデル UniformBall / ExactWeight / AdversarialSet を指定します。[default: UniformBall]
  --source=WORD     : 送信語を 0/1 文字列で指定します。（省略時は全 0 語）
  --code=FILE       : 符号語ファイルを指定します。
  --batch=FILE      : transmit が出力した JSON を指定します。
  --method=METHOD   : 復号法 naive / shatter / covering / majority を指定します。
  --D=FILE          : 被覆符号の生成行列ファイルを指定します。
  --k=K             : 検証半径 k を指定します。（省略時は多数決結果から計算）
  --h-conf=H        : 正規近似の信頼係数 h を指定します。[default: 3]
  -D                : デバッグモードで動作します。
"""

from __future__ import annotations

import json
import logging
import pathlib
import sys
from dataclasses import dataclass, field
from typing import Any

COMMANDS = ("table1", "table2", "simulate", "bounds", "oracle", "transmit", "decode", "majority")

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class CliInvocation:
    """A parsed command line."""

    command: str
    options: dict[str, Any] = field(default_factory=dict)
    config_path: pathlib.Path = pathlib.Path("config.yaml")
    out: pathlib.Path | None = None
    fmt: str = "json"
    debug: bool = False

    @classmethod
    def parse(cls, argv: list[str] | None = None) -> CliInvocation:
        import docopt

        assert __doc__ is not None
        args = docopt.docopt(__doc__, argv=argv)
        command = next(name for name in COMMANDS if args.get(name))
        fmt = args.get("--format") or ("csv" if command in ("table1", "table2", "simulate") else "json")
        if fmt not in ("csv", "json"):
            raise ValueError(f"unknown format: {fmt}")
        if fmt == "csv" and command not in ("table1", "table2", "simulate"):
            raise ValueError(f"{command} only emits JSON")
        out = args.get("--out")
        return cls(
            command=command,
            options={k: v for k, v in args.items() if k.startswith("-")},
            config_path=pathlib.Path(args["-c"]),
            out=pathlib.Path(out) if out else None,
            fmt=fmt,
            debug=bool(args.get("-D")),
        )

    def get_int(self, name: str, default: int | None = None) -> int | None:
        value = self.options.get(name)
        if value is None:
            return default
        try:
            return int(value)
        except ValueError:
            raise ValueError(f"{name} must be an integer, got {value!r}") from None

    def require_int(self, name: str) -> int:
        value = self.get_int(name)
        if value is None:
            raise ValueError(f"{name} is required")
        return value

    def get_path(self, name: str) -> pathlib.Path:
        value = self.options.get(name)
        if not value:
            raise ValueError(f"{name} is required")
        path = pathlib.Path(value)
        if not path.exists():
            raise ValueError(f"{name}: no such file {path}")
        return path


def _load_config(invocation: CliInvocation) -> Any:
    from levrecon.config import Config
    from levrecon.core import db, db_config

    path = invocation.config_path
    if not path.exists():
        logging.debug("Config file %s not found, using defaults", path)
        return Config()

    schema_path = pathlib.Path("schema/config.schema")
    if not schema_path.exists():
        schema_path = db.CONFIG_SCHEMA_PATH
    config = Config.load(path, schema_path)
    cache_dir = config.data.get_cache_dir(path.resolve().parent)
    if cache_dir is not None:
        db_config.set_result_db_path(cache_dir / "result.db")
    logging.info("Config loaded from %s", path)
    return config


def _experiment_output(invocation: CliInvocation, config: Any, experiment: Any) -> str:
    from levrecon.core import harness

    result = harness.run(experiment, use_store=config.data.cache is not None)
    return harness.to_csv(result) if invocation.fmt == "csv" else harness.to_json(result)


def _run_table(invocation: CliInvocation) -> str:
    from levrecon.core.harness import ExperimentConfig

    config = _load_config(invocation)
    defaults = config.experiment
    samples = invocation.get_int("--samples", defaults.samples)
    workers = invocation.get_int("--workers", defaults.workers)
    seed = config.resolve_seed(invocation.options.get("--seed"))
    if invocation.command == "table1":
        experiment = ExperimentConfig.table1(samples, seed, workers, **defaults.table1.to_dict())
    else:
        experiment = ExperimentConfig.table2(samples, seed, workers, **defaults.table2.to_dict())
    return _experiment_output(invocation, config, experiment)


def _channel_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ValueError(f"--N must be a comma separated list of integers, got {text!r}") from None


def _run_simulate(invocation: CliInvocation) -> str:
    from levrecon.core.harness import ExperimentConfig, ExperimentKind, Metric

    config = _load_config(invocation)
    e, ell = invocation.require_int("--e"), invocation.require_int("--l")
    try:
        metric = Metric(invocation.options["--metric"])
    except ValueError:
        raise ValueError(f"unknown metric: {invocation.options['--metric']}") from None
    experiment = ExperimentConfig(
        kind=ExperimentKind.CUSTOM,
        n=invocation.require_int("--n"),
        t=e + ell,
        e=(e,),
        N=_channel_list(invocation.options["--N"]),
        samples=invocation.get_int("--samples", config.experiment.samples) or 1,
        master_seed=config.resolve_seed(invocation.options.get("--seed")),
        worker_count=invocation.get_int("--workers", config.experiment.workers) or 1,
        metric=metric,
    )
    return _experiment_output(invocation, config, experiment)


def _run_bounds(invocation: CliInvocation) -> dict[str, Any]:
    from levrecon.core import bounds

    params = bounds.ReconstructionParams(
        n=invocation.require_int("--n"),
        e=invocation.require_int("--e"),
        ell=invocation.require_int("--l"),
        N=invocation.get_int("--N"),
        h=invocation.get_int("--h"),
        a=invocation.get_int("--a"),
        R=invocation.get_int("--R"),
        M=invocation.get_int("--M"),
    )
    n, e, ell = params.n, params.e, params.ell
    report: dict[str, Any] = {"params": params.to_dict()}
    if n >= 2 * e + 1:
        report["levenshtein_N1"] = bounds.levenshtein_N1(n, e, ell)

    required = {}
    for size in range(1, ell + 1):
        try:
            required[str(size)] = bounds.required_channels(n, e, ell, size)
        except ValueError as error:
            logging.debug("No channel count for list size %d: %s", size, error)
    report["required_channels"] = required

    if params.h is not None:
        h = params.h
        report["channel_count_Nh"] = {
            "h": h,
            "unprimed": bounds.channel_count_Nh(n, e, ell, h, bounds.SumVariant.UNPRIMED),
            "primed": bounds.channel_count_Nh(n, e, ell, h, bounds.SumVariant.PRIMED),
            "asymptotic_leading": bounds.asymptotic_Nh_leading(n, e, ell, h),
        }
    if ell >= 2:
        report["l2_bound_three_ways"] = bounds.l2_bound_three_ways(n, e, ell)._asdict()
    if ell >= 3:
        report["channel_count_for_list_l"] = bounds.channel_count_for_list_l(n, e, ell)
    b = bounds.applicable_b(e, ell)
    report["n_threshold"] = {"b": b, "n": bounds.n_threshold(e, ell, b)}
    report["bounds"] = [record.to_dict() for record in bounds.generic_list_bounds(params)]
    return report


def _run_oracle(invocation: CliInvocation) -> dict[str, Any]:
    from levrecon.core import bounds

    n, e, ell, h = (invocation.require_int(k) for k in ("--n", "--e", "--l", "--h"))
    result = bounds.oracle_Nprime(n, e, ell, h)
    report = result.to_dict()
    if ell >= 2 and 3 <= h <= ell + 1 and n >= h * (e + 1):
        formula = bounds.channel_count_Nh(n, e, ell, h)
        length_needed = bounds.n_threshold(e, ell, bounds.applicable_b(e, ell))
        report["formula"] = formula
        report["n_threshold"] = length_needed
        if result.value != formula:
            logging.warning(
                "Oracle value %d differs from the formula %d at n=%d (threshold %d, observational)",
                result.value,
                formula,
                n,
                length_needed,
            )
    return report


def _run_transmit(invocation: CliInvocation) -> dict[str, Any]:
    import numpy as np

    from levrecon.core.channels import ChannelModel, transmit
    from levrecon.core.hamming_core import Word

    config = _load_config(invocation)
    n = invocation.require_int("--n")
    t = invocation.require_int("--e") + invocation.require_int("--l")
    source_text = invocation.options.get("--source")
    source = Word.from_str(source_text) if source_text else Word.zero(n)
    if source.length != n:
        raise ValueError(f"--source has length {source.length}, expected {n}")
    rng = np.random.default_rng(config.resolve_seed(invocation.options.get("--seed")))
    model = ChannelModel.parse(invocation.options["--model"])
    return transmit(source, t, invocation.require_int("--N"), model, rng).to_dict()


def _read_batch(invocation: CliInvocation) -> Any:
    from levrecon.core.channels import OutputBatch

    try:
        return OutputBatch.from_json(invocation.get_path("--batch").read_text(encoding="utf-8"))
    except (json.JSONDecodeError, KeyError) as error:
        raise ValueError(f"malformed output batch: {error}") from None


def _run_decode(invocation: CliInvocation) -> dict[str, Any]:
    from levrecon.core import reconstruct
    from levrecon.core.codes import load_code, load_linear_code
    from levrecon.core.majority import verified_decode

    C = load_code(invocation.get_path("--code"))  # noqa: N806
    batch = _read_batch(invocation)
    method = invocation.options["--method"]
    if method == "naive":
        return reconstruct.intersect_list(C, batch, batch.t).to_dict()
    if method == "shatter":
        return reconstruct.shatter_decode(C, batch, batch.t, invocation.get_int("--a", 0) or 0).to_dict()
    if method == "covering":
        D = load_linear_code(invocation.get_path("--D"))  # noqa: N806
        return reconstruct.covering_decode(C, batch, batch.t, invocation.require_int("--R"), D).to_dict()
    if method == "majority":
        return verified_decode(C, batch, batch.t).to_dict()
    raise ValueError(f"unknown method: {method}")


def _run_majority(invocation: CliInvocation) -> dict[str, Any]:
    from levrecon.core import majority
    from levrecon.core.codes import load_code

    batch = _read_batch(invocation)
    try:
        h_conf = float(invocation.options["--h-conf"])
    except ValueError:
        raise ValueError(f"--h-conf must be a number, got {invocation.options['--h-conf']!r}") from None
    result = majority.majority_vote(batch)
    k = majority.verify_radius(result, batch.t)
    report: dict[str, Any] = {**result.to_dict(), "k": k}

    code_path = invocation.options.get("--code")
    if code_path:
        C = load_code(invocation.get_path("--code"))  # noqa: N806
        report["outcome"] = majority.verified_decode(C, batch, batch.t).to_dict()
    else:
        if k is None:
            report["outcome"] = majority.Unverified(result.z).to_dict()
        else:
            report["outcome"] = {"outcome": "Certified", "k": k}

    n, t, N = batch.n, batch.t, batch.N  # noqa: N806
    bounds_report: dict[str, Any] = {
        "thm13": majority.majority_success_lb(n, t, N, majority.BirthdayMethod.RECURSIVE),
        "thm14": majority.majority_success_lb(n, t, N, majority.BirthdayMethod.SIMPLE),
        "cor17": None,
    }
    target = invocation.get_int("--k", k)
    if target is not None:
        try:
            bounds_report["cor17"] = majority.verifiable_success_lb(n, t, target, N, h_conf).to_dict()
        except ValueError as error:
            logging.info("Verifiability bound not available: %s", error)
    report["bounds"] = bounds_report
    return report


_HANDLERS = {
    "bounds": _run_bounds,
    "oracle": _run_oracle,
    "transmit": _run_transmit,
    "decode": _run_decode,
    "majority": _run_majority,
}


def _render(invocation: CliInvocation) -> str:
    if invocation.command in ("table1", "table2"):
        return _run_table(invocation)
    if invocation.command == "simulate":
        return _run_simulate(invocation)
    return json.dumps(_HANDLERS[invocation.command](invocation), indent=2, ensure_ascii=False) + "\n"


def dispatch(invocation: CliInvocation) -> int:
    """Run one subcommand; nothing reaches stdout unless it succeeds."""
    if invocation.command not in COMMANDS:
        print(f"levrecon: unknown subcommand {invocation.command}", file=sys.stderr)
        return EXIT_USAGE
    try:
        text = _render(invocation)
        if invocation.out is not None:
            invocation.out.write_text(text, encoding="utf-8")
            logging.info("Wrote %s", invocation.out)
    except ValueError as error:
        print(f"levrecon: {error}", file=sys.stderr)
        return EXIT_USAGE
    except Exception:
        logging.exception("levrecon %s failed", invocation.command)
        return EXIT_INTERNAL

    if invocation.out is None:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv: list[str] | None = None) -> None:
    import docopt
    import my_lib.logger

    try:
        invocation = CliInvocation.parse(argv)
    except docopt.DocoptExit:
        print("levrecon: invalid arguments (see levrecon --help)", file=sys.stderr)
        sys.exit(EXIT_USAGE)
    except ValueError as error:
        print(f"levrecon: {error}", file=sys.stderr)
        sys.exit(EXIT_USAGE)

    my_lib.logger.init("levrecon", level=logging.DEBUG if invocation.debug else logging.INFO)
    sys.exit(dispatch(invocation))


if __name__ == "__main__":
    main()
