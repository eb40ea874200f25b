#!/usr/bin/env python3
"""End-to-end contract tests for the boxjenkins CLI.

Drives the installed binary through simulate / identify / fit / evaluate /
forecast / pipeline on a synthetic monthly series and checks artifact shapes,
determinism, and the error-exit contract.
"""
import argparse
import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

CHECKS = []
FAILURES = []


def check(name, ok, detail=""):
    CHECKS.append(name)
    if not ok:
        FAILURES.append(f"{name}: {detail}")
        print(f"not ok {len(CHECKS)} {name} -- {detail}")
    else:
        print(f"ok {len(CHECKS)} {name}")


def run(cli, *args, expect=0):
    proc = subprocess.run([str(cli), *args], capture_output=True, text=True)
    if expect is not None and proc.returncode != expect:
        raise RuntimeError(
            f"{args[0]} exited {proc.returncode} (wanted {expect}):\n{proc.stderr}"
        )
    return proc


def month_range(start_year, start_month, n):
    y, m = start_year, start_month
    for _ in range(n):
        yield f"{y:04d}-{m:02d}"
        m += 1
        if m == 13:
            y, m = y + 1, 1


def write_input(path, n=132):
    # positive monthly series with trend and a stable seasonal pattern
    rows = ["date,value"]
    for t, stamp in enumerate(month_range(2009, 1, n)):
        seasonal = 0.25 * math.sin(2 * math.pi * t / 12) + 0.1 * math.cos(4 * math.pi * t / 12)
        wobble = 0.08 * math.sin(1.7 * t) + 0.05 * math.cos(0.9 * t + 1.0)
        value = 120.0 * math.exp(0.004 * t + seasonal + wobble)
        rows.append(f"{stamp},{value:.6f}")
    path.write_text("\n".join(rows) + "\n")


def read_csv(path):
    lines = path.read_text().strip().splitlines()
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True, type=Path)
    args = ap.parse_args()
    cli = args.cli.resolve()

    with tempfile.TemporaryDirectory(prefix="bj-cli-") as tmp:
        root = Path(tmp)
        input_csv = root / "input.csv"
        write_input(input_csv)

        common = [
            "--input", str(input_csv), "--period", "12", "-d", "1",
            "--holdout", "12", "--grid", "0,1;1,0x1,0;0,1",
        ]

        # ---- pipeline end to end -------------------------------------------
        out1 = root / "run1"
        run(cli, "pipeline", *common, "--horizon", "12", "--out", str(out1))

        artifacts = [
            "stationarity.json", "acf.csv", "pacf.csv", "selection.json",
            "model.json", "diagnostics.json", "residual_acf.csv",
            "holdout.json", "forecast.csv",
        ]
        for name in artifacts:
            check(f"pipeline writes {name}", (out1 / name).is_file())

        stationarity = json.loads((out1 / "stationarity.json").read_text())
        for key in ["n", "n_after_differencing", "lambda", "d", "seasonal_d", "period", "adf"]:
            check(f"stationarity.json has {key}", key in stationarity)
        check("stationarity n", stationarity.get("n") == 120)
        check("stationarity differencing", stationarity.get("n_after_differencing") == 119)
        check("adf block has p_value", "p_value" in stationarity.get("adf", {}))

        selection = json.loads((out1 / "selection.json").read_text())
        check("selection has rows", len(selection.get("rows", [])) == 4)
        check("selection chosen in range", 0 <= selection.get("chosen", 99) < 4)
        aics = [r["aic"] for r in selection["rows"] if r.get("fitted")]
        check("selection rows sorted by aic", aics == sorted(aics), str(aics))

        model = json.loads((out1 / "model.json").read_text())
        for key in ["order", "coefficients", "sigma2", "loglik", "aic", "converged", "transform"]:
            check(f"model.json has {key}", key in model)
        check("model records the transform exponent", "lambda" in model.get("transform", {}))

        diagnostics = json.loads((out1 / "diagnostics.json").read_text())
        for key in ["alpha", "ljung_box", "shapiro_wilk", "correlogram",
                    "residual_vs_fitted", "residual_vs_time"]:
            check(f"diagnostics.json has {key}", key in diagnostics)

        holdout = json.loads((out1 / "holdout.json").read_text())
        check("holdout n", holdout.get("n") == 12)
        check("holdout steps", len(holdout.get("steps", [])) == 12)
        check("holdout mae finite", isinstance(holdout.get("mae"), (int, float)))
        first_step = holdout["steps"][0]
        check("holdout step schema",
              all(k in first_step for k in ["month", "actual", "forecast", "error"]))
        check("holdout starts where training ends", first_step["month"] == "2019-01")

        header, rows = read_csv(out1 / "forecast.csv")
        check("forecast header", header == ["month", "point", "lower", "upper"])
        check("forecast row count", len(rows) == 12, str(len(rows)))
        check("forecast starts after the sample", rows[0][0] == "2020-01")
        ordered = all(float(r[2]) < float(r[1]) < float(r[3]) for r in rows)
        check("forecast intervals ordered", ordered)

        header, rows = read_csv(out1 / "acf.csv")
        check("acf header", header == ["lag", "acf", "band"])
        check("acf starts at lag 0 with 1", rows[0][0] == "0" and float(rows[0][1]) == 1.0)
        header, _ = read_csv(out1 / "pacf.csv")
        check("pacf header", header == ["lag", "pacf", "band"])
        header, _ = read_csv(out1 / "residual_acf.csv")
        check("residual acf header", header == ["lag", "acf", "pacf", "band"])

        # ---- rerun determinism ---------------------------------------------
        out2 = root / "run2"
        run(cli, "pipeline", *common, "--horizon", "12", "--out", str(out2))
        for name in artifacts:
            same = (out1 / name).read_bytes() == (out2 / name).read_bytes()
            check(f"rerun reproduces {name}", same)

        # ---- staged subcommands compose into the same model ----------------
        staged = root / "staged"
        base = ["--input", str(input_csv), "--period", "12", "-d", "1", "--holdout", "12"]
        run(cli, "identify", *base, "--out", str(staged))
        run(cli, "fit", *base, "--grid", "0,1;1,0x1,0;0,1", "--out", str(staged))
        run(cli, "evaluate", *base, "--out", str(staged))
        run(cli, "forecast", "--input", str(input_csv), "--period", "12",
            "--horizon", "12", "--out", str(staged))
        for name in artifacts:
            check(f"staged run writes {name}", (staged / name).is_file())
        check("staged model matches pipeline model",
              (staged / "model.json").read_bytes() == (out1 / "model.json").read_bytes())
        check("staged forecast matches pipeline forecast",
              (staged / "forecast.csv").read_bytes() == (out1 / "forecast.csv").read_bytes())

        # ---- simulate ------------------------------------------------------
        sim1 = root / "sim1"
        sim_args = ["simulate", "--order", "1,0,1,0,0,0", "--period", "1", "--params", "0.6,-0.3",
                    "--sigma2", "2.0", "-n", "48", "--seed", "11"]
        run(cli, *sim_args, "--out", str(sim1))
        header, rows = read_csv(sim1 / "simulated.csv")
        check("simulate header", header == ["date", "value"])
        check("simulate row count", len(rows) == 48)
        sim2 = root / "sim2"
        run(cli, *sim_args, "--out", str(sim2))
        check("simulate is seed-deterministic",
              (sim1 / "simulated.csv").read_bytes() == (sim2 / "simulated.csv").read_bytes())
        sim3 = root / "sim3"
        run(cli, *sim_args[:-1], "12", "--out", str(sim3))
        check("simulate depends on the seed",
              (sim1 / "simulated.csv").read_bytes() != (sim3 / "simulated.csv").read_bytes())

        # ---- error contract ------------------------------------------------
        def check_error(name, *cmd, needle=None):
            proc = run(cli, *cmd, expect=None)
            ok = proc.returncode != 0 and proc.stderr.startswith("error:")
            if ok and needle is not None:
                ok = needle in proc.stderr
            check(name, ok, f"rc={proc.returncode} stderr={proc.stderr.strip()[:120]}")

        check_error("missing input fails", "identify", "--input", str(root / "nope.csv"),
                    needle="cannot open")
        check_error("unknown value column fails", "identify", "--input", str(input_csv),
                    "--value-column", "nope")
        check_error("oversized holdout fails", "fit", "--input", str(input_csv),
                    "--holdout", "132", needle="training")
        check_error("evaluate before fit fails", "evaluate", "--input", str(input_csv),
                    "--holdout", "12", "--out", str(root / "empty"),
                    needle="fit stage")
        check_error("bad confidence fails", "forecast", "--input", str(input_csv),
                    "--conf", "1.5", "--out", str(out1))
        check_error("bad simulate params fail", "simulate", "--order", "1,0,0,0,0,0",
                    "--period", "1", "--params", "0.5,0.9", "--out", str(root / "simbad"))
        no_sub = run(cli, expect=None)
        check("missing subcommand fails", no_sub.returncode != 0,
              f"rc={no_sub.returncode}")

    print(f"\n{len(CHECKS) - len(FAILURES)}/{len(CHECKS)} checks passed")
    if FAILURES:
        for f in FAILURES:
            print(f"FAILED: {f}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
