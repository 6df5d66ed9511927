#!/usr/bin/env python3
"""End-to-end checks of the blocksep CLI: exit codes, schemas, determinism."""
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

EXE, SCHEMA_DIR = sys.argv[1], sys.argv[2]
CASE = sys.argv[3]

with open(os.path.join(SCHEMA_DIR, "report.schema.json")) as fh:
    REPORT_SCHEMA = json.load(fh)
with open(os.path.join(SCHEMA_DIR, "config.schema.json")) as fh:
    CONFIG_SCHEMA = json.load(fh)

WORK = tempfile.mkdtemp(prefix="blocksep-cli-")


def run(args, name="report.json"):
    out = os.path.join(WORK, name)
    proc = subprocess.run([EXE, *args, "--out", out], capture_output=True, text=True, timeout=600)
    report = None
    if os.path.exists(out):
        with open(out) as fh:
            report = json.load(fh)
        jsonschema.validate(report, REPORT_SCHEMA)
        if "config" in report:
            jsonschema.validate(report["config"], CONFIG_SCHEMA)
        assert os.path.exists(out + ".txt"), "text summary missing"
    return proc, report


def expect(cond, msg):
    if not cond:
        print("FAIL:", msg)
        sys.exit(1)


def statuses(report):
    return [r["status"] for r in report["results"]["relations"]]


def case_proposition():
    p, r = run(["verify", "--catalog", "proposition-A"])
    expect(p.returncode == 0, f"exit {p.returncode}: {p.stderr}")
    expect(statuses(r) and all(s == "zero" for s in statuses(r)), "not all zero")


def case_oscillator():
    p, r = run(["verify", "--catalog", "oscillator", "--blocks", "2,2"])
    expect(p.returncode == 0, f"exit {p.returncode}: {p.stderr}")
    expect(all(s == "zero" for s in statuses(r)), "not all zero")


def case_erratum():
    p, r = run(["verify", "--catalog", "coulomb-erratum-wrong", "--blocks", "2,2"])
    expect(p.returncode == 1, f"exit {p.returncode}")
    expect(r is not None and all(s == "residual" for s in statuses(r)), "erratum not flagged")


def case_negative_numeric():
    p, r = run(["verify", "--catalog", "negative-controls", "--blocks", "2,2", "--mode", "numeric"])
    expect(p.returncode == 1, f"exit {p.returncode}")
    expect(all(x["as_expected"] for x in r["results"]["relations"]), "control not detected")


def case_model2_numeric():
    p, r = run(["verify", "--catalog", "oscillator", "--blocks", "2,1", "--model2", "4,1", "--mode", "numeric",
                "--jobs", "3"])
    expect(p.returncode == 0, f"exit {p.returncode}: {p.stderr}")
    expect(all(x["residual"]["max"] <= 1e-5 for x in r["results"]["relations"]), "residual too large")


def case_spectrum_oscillator():
    p, r = run(["spectrum", "--blocks", "1,1", "--kmax", "2"])
    expect(p.returncode == 0, f"exit {p.returncode}: {p.stderr}")
    rows = r["results"]["spectrum"]
    expect(len(rows) == 6, f"{len(rows)} rows")
    expect(all(x["exact_ratio"] == "2" for x in rows), "ratio not exactly 2")
    expect(r["flags"]["printed_oracle_ratio"] == "2", "discrepancy not flagged")


def case_spectrum_coulomb():
    p, r = run(["spectrum", "--family", "coulomb", "--blocks", "2,2", "--nr-max", "2", "--j-max", "1"])
    expect(p.returncode == 0, f"exit {p.returncode}: {p.stderr}")
    rows = r["results"]["spectrum"]
    for j in (0, 1):
        e = [x["oracle"] for x in rows if x["J"] == [j]]
        expect(len(e) == 3 and all(a < b < 0 for a, b in zip(e, e[1:])), f"J={j}: {e}")


def case_bad_blocks():
    p, _ = run(["spectrum", "--blocks", "0,3"])
    expect(p.returncode == 2, f"exit {p.returncode}")


def case_bad_config():
    cfg = os.path.join(WORK, "bad.json")
    with open(cfg, "w") as fh:
        json.dump({"catalog": "proposition-A", "surprise": 1}, fh)
    p, _ = run(["verify", "--config", cfg])
    expect(p.returncode == 2, f"exit {p.returncode}")
    p, _ = run(["verify", "--catalog", "proposition-A", "--tol", "0"])
    expect(p.returncode == 2, f"exit {p.returncode}")
    p, _ = run(["verify", "--catalog", "no-such-catalog"])
    expect(p.returncode == 2, f"exit {p.returncode}")


def case_config_file():
    cfg = os.path.join(WORK, "cfg.json")
    doc = {"command": "eigencheck",
           "model": {"family": "oscillator", "blocks": [2, 2], "coupling": "omega2",
                     "potentials": [{"kind": "constant", "value": "1"}, {"kind": "constant", "value": "2"}]},
           "params": {"omega2": 1.0},
           "quantum": {"levels": [[1], [0]], "k": [0, 1]}}
    jsonschema.validate(doc, CONFIG_SCHEMA)
    with open(cfg, "w") as fh:
        json.dump(doc, fh)
    p, r = run(["eigencheck", "--config", cfg])
    expect(p.returncode == 0, f"exit {p.returncode}: {p.stderr}")
    # same instance through flags
    _, f = run(["eigencheck", "--blocks", "2,2", "--param", "beta1=1", "--param", "beta2=2", "--param", "omega2=1",
                "--k", "0,1", "--levels", "1|0"], "flags.json")
    expect(r["results"]["eigenchecks"][0]["energy"] == f["results"]["eigenchecks"][0]["energy"], "energy")


def case_eigen_model1():
    p, r = run(["eigencheck", "--blocks", "2,2", "--param", "beta1=1", "--param", "beta2=2", "--k", "0,1",
                "--levels", "1|0"])
    expect(p.returncode == 0, f"exit {p.returncode}: {p.stderr}")
    expect(r["results"]["eigenchecks"][0]["rel_spread"] <= 1e-6, "spread")


def case_eigen_model2():
    p, r = run(["eigencheck", "--blocks", "2,1", "--model2", "4,1"])
    expect(p.returncode == 0, f"exit {p.returncode}: {p.stderr}")
    e = r["results"]["eigenchecks"][0]
    expect(e["rel_spread"] <= 1e-5 and e["rel_error"] <= 1e-5, "residual")


def case_eigen_coulomb():
    p, r = run(["eigencheck", "--family", "coulomb", "--blocks", "2,2", "--nr", "1"])
    expect(p.returncode == 0, f"exit {p.returncode}: {p.stderr}")
    e = r["results"]["eigenchecks"][0]
    expect(e["rel_spread"] <= 1e-6 and e["rel_error"] <= 1e-6, "residual")


def case_determinism():
    args = ["verify", "--catalog", "oscillator", "--blocks", "2,1", "--mode", "both", "--seed", "7"]
    _, a = run(args + ["--jobs", "1"], "a.json")
    _, b = run(args + ["--jobs", "4"], "b.json")
    for rep in (a, b):
        rep.pop("timing")
        rep["config"].pop("jobs")
    expect(json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True), "reports differ")
    _, c = run(args + ["--jobs", "1"], "c.json")
    _, d = run(args + ["--jobs", "1"], "d.json")
    c.pop("timing")
    d.pop("timing")
    expect(c == d, "repeat run differs")


globals()["case_" + CASE]()
print("ok", CASE)
