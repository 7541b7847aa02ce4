"""End-to-end checks of the cheeger executable: exit codes, output shape, determinism."""

import csv
import io
import json
import os
import subprocess
import sys
import tempfile

exe = sys.argv[1]
failed = []


def run(*args):
    p = subprocess.run([exe, *args], capture_output=True, text=True, timeout=120)
    return p.returncode, p.stdout, p.stderr


def expect(name, cond, extra=""):
    print(("ok   " if cond else "FAIL ") + name + (" " + extra if extra and not cond else ""))
    if not cond:
        failed.append(name)


code, out, _ = run("iso", "--measure", "laplace:0,1")
expect("iso laplace", code == 0 and out.strip() == "1.000000", out)

code, out, _ = run("iso", "--measure", "uniform:0,1", "--profile", "-")
expect("iso profile", code == 0 and out.splitlines()[0] == "2.000000" and len(out.splitlines()) > 100)

code, out, _ = run("sharpness", "-m", "laplace:0,1", "--p", "2", "--k", "1,3,5")
rows = list(csv.DictReader(io.StringIO(out)))
ratios = [round(float(r["ratio"]), 5) for r in rows]
expect("sharpness ratios", code == 0 and ratios == [0.70711, 0.91287, 0.94868], out)

code, out, _ = run("best-constant", "-m", "uniform:0,1")
expect("best-constant uniform", code == 0 and "limit_estimate,0.5" in out, out)

code, out, err = run("verify", "-m", "laplace:0,1")
expect("verify default suite", code == 0, err)
expect("csv header", out.startswith("name,family,params,p,lhs,rhs,ratio,slack,pass,status"))

code, out, _ = run("verify", "-m", "gaussian:0,1", "--format", "json", "--check", "cheeger")
expect("json output", code == 0 and isinstance(json.loads(out), list))

code, _, _ = run("--debug-rhs-scale", "0.1", "verify", "-m", "laplace:0,1")
expect("scaled bounds exit 1", code == 1)

code, _, _ = run("verify", "-m", "tabulated:/no/such/file.txt")
expect("missing tabulated file exit 2", code == 2)

code, _, err = run("verify", "-m", "uniform:0,1", "-f", "x^-1", "--check", "cheeger")
expect("divergent integral exit 3", code == 3, err)

code, _, _ = run("bogus")
expect("unknown subcommand exit 2", code == 2)

code, _, err = run("verify", "--check", "cheegr")
expect("check suggestion", code == 2 and "cheeger" in err, err)

code, _, err = run("verify", "-f", "x^^2")
expect("malformed expression exit 2", code == 2, err)

with tempfile.TemporaryDirectory() as d:
    cfg = {
        "measures": ["laplace:0,1", "beta:2,5"],
        "functions": ["x", "x^3"],
        "checks": [{"name": "cov_l1_linf"}, {"name": "hardy", "p": [2, 3]}, {"name": "moment_comparison", "p": [1]}],
        "seed": 9,
        "random_functions": 2,
    }
    path = os.path.join(d, "run.json")
    with open(path, "w") as f:
        json.dump(cfg, f)
    outs = []
    for i in range(2):
        o = os.path.join(d, f"out{i}.csv")
        code, _, err = run("verify", "-c", path, "-o", o)
        with open(o, "rb") as f:
            outs.append(f.read())
    expect("config run", code == 0, err)
    expect("byte-identical reports", outs[0] == outs[1] and len(outs[0]) > 0)
    expect("p=1 moment comparison is inapplicable", b"moment_comparison" in outs[0] and b"inapplicable" in outs[0])

    cfg["checks"] = [{"name": "lp_poincare", "p": [0.5]}]
    with open(path, "w") as f:
        json.dump(cfg, f)
    code, _, err = run("verify", "-c", path)
    expect("p<1 rejected", code == 2 and "checks[0].p" in err, err)

sys.exit(1 if failed else 0)
