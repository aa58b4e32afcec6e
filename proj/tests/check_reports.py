#!/usr/bin/env python3
# Copyright 2026 The cbc-chaos Authors
# SPDX-License-Identifier: Apache-2.0
"""Runs every cbc-chaos subcommand and validates the reports against the
published schema, plus the CSV format, config-file handling and exit codes."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

CLI, SCHEMA = os.path.abspath(sys.argv[1]), sys.argv[2]

RUNS = [
    ["graph", "--cipher", "permutation", "--n-bits", "4", "--seed", "1"],
    ["graph", "--cipher", "identity", "--n-bits", "3", "--convention", "paper-complement",
     "--inner-function", "identity"],
    ["simulate", "--cipher", "identity", "--n-bits", "2", "--iv", "00", "--message", "11,01",
     "--steps", "0"],
    ["simulate", "--cipher", "feistel", "--n-bits", "6", "--seed", "2", "--steps", "5"],
    ["distance", "--n-bits", "2", "--x-state", "01", "--x-message", "10", "--y-state", "11",
     "--y-message", "00"],
    ["distance", "--n-bits", "2", "--x-state", "01", "--y-state", "01"],
    ["mix", "--cipher", "identity", "--n-bits", "2", "--epsilon", "1/2", "--target-state", "11"],
    ["sensitivity", "--n-bits", "8", "--cipher", "feistel", "--epsilon", "1/1000",
     "--with-timings"],
    ["entropy", "--cipher", "identity", "--n-bits", "2", "--prefix-len", "2", "--n-max", "2"],
    ["entropy", "--n-bits", "3", "--prefix-len", "1", "--epsilon", "9/2"],
    ["probe-expansivity", "--n-bits", "4", "--horizon", "20", "--samples", "10"],
]

failures = []


def check(cond, msg):
    if not cond:
        failures.append(msg)


def run(args, cwd, env=None):
    return subprocess.run([CLI] + args, cwd=cwd, env=env, capture_output=True, text=True)


with open(SCHEMA) as f:
    schema = json.load(f)
validator = jsonschema.Draft202012Validator(schema)

with tempfile.TemporaryDirectory() as tmp:
    for i, args in enumerate(RUNS):
        report = os.path.join(tmp, f"r{i}.json")
        proc = run(args + ["--report", report, "--csv", os.path.join(tmp, f"t{i}.csv")]
                   if args[0] == "simulate" else args + ["--report", report], tmp)
        check(proc.returncode == 0, f"{args}: exit {proc.returncode}: {proc.stderr}")
        if proc.returncode != 0:
            continue
        with open(report) as f:
            data = json.load(f)
        for err in validator.iter_errors(data):
            failures.append(f"{args}: schema: {err.message} at {list(err.path)}")

    # Scenario checks.
    with open(os.path.join(tmp, "r0.json")) as f:
        g = json.load(f)["results"]
    check(g["strongly_connected"] and g["scc_count"] == 1, "graph verdict")
    with open(os.path.join(tmp, "r1.json")) as f:
        g = json.load(f)["results"]
    check(not g["strongly_connected"] and g["scc_count"] == 8, "identity inner verdict")
    with open(os.path.join(tmp, "t2.csv")) as f:
        check(f.read() == "step,state,next_block\n0,00,11\n", "zero-step CSV")
    with open(os.path.join(tmp, "r6.json")) as f:
        m = json.load(f)["results"]
    check(m["steps"] == 3 and m["verified"], "mix example")
    with open(os.path.join(tmp, "r4.json")) as f:
        d = json.load(f)["results"]
    check(d["distance"]["fraction"] == "29/20", "distance example")

    # Default output directory from the environment.
    out = os.path.join(tmp, "envdir")
    env = dict(os.environ, CBC_CHAOS_OUT_DIR=out)
    proc = run(["graph", "--n-bits", "2"], tmp, env)
    check(proc.returncode == 0 and os.path.exists(os.path.join(out, "graph.json")),
          "CBC_CHAOS_OUT_DIR not honoured")

    # Config file, overridden by flags.
    cfg = os.path.join(tmp, "cfg.json")
    with open(cfg, "w") as f:
        json.dump({"cipher": "identity", "n-bits": 2,
                   "mix": {"epsilon": "1/10", "target-state": "01"}}, f)
    rep = os.path.join(tmp, "cfg_mix.json")
    proc = run(["--config", cfg, "mix", "--epsilon", "1/1000", "--report", rep], tmp)
    check(proc.returncode == 0, f"config run failed: {proc.stderr}")
    if proc.returncode == 0:
        with open(rep) as f:
            c = json.load(f)
        check(c["config"]["cipher"]["kind"] == "identity", "config value not applied")
        check(c["config"]["parameters"]["epsilon"] == "1/1000", "flag did not override config")
        check(c["results"]["target"]["state"] == "01", "subcommand config value not applied")

    # Guard and parse errors: exit code 2 with a one-line diagnostic.
    for bad in (["graph", "--n-bits", "13"],
                ["entropy", "--n-bits", "8", "--prefix-len", "3"],
                ["mix", "--n-bits", "2", "--epsilon", "0.5", "--target-state", "11"],
                ["mix", "--n-bits", "2", "--epsilon", "1", "--target-state", "11"],
                ["simulate", "--n-bits", "2", "--iv", "011"],
                ["graph", "--cipher", "feistel", "--n-bits", "5"],
                ["graph", "--unknown-flag"],
                ["--config", os.path.join(tmp, "missing.json"), "graph"]):
        proc = run(bad, tmp)
        check(proc.returncode == 2, f"{bad}: expected exit 2, got {proc.returncode}")
        check(len(proc.stderr.strip().splitlines()) == 1, f"{bad}: diagnostic not one line")

    with open(os.path.join(tmp, "extra.json"), "w") as f:
        f.write('{"no-such-option": 1}')
    proc = run(["--config", os.path.join(tmp, "extra.json"), "graph"], tmp)
    check(proc.returncode == 2, "unknown config key accepted")

for msg in failures:
    print("FAIL:", msg)
print("ok" if not failures else f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
