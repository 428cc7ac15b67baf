"""End-to-end checks of the curvlab command line: exit codes, output and the JSON schema."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

CLI, SCHEMA, DATA = (os.path.abspath(a) for a in sys.argv[1:4])

with open(SCHEMA) as f:
    schema = json.load(f)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

failures = []


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("CURVLAB_SEED", None)
    full_env.update(env or {})
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env, cwd=DATA)


def report(*args, env=None):
    p = run(*args, "--format", "json", env=env)
    doc = json.loads(p.stdout)
    errors = sorted(validator.iter_errors(doc), key=str)
    check(not errors, f"{' '.join(args)}: schema: {errors[0].message if errors else ''}")
    check(json.loads(json.dumps(doc)) == doc, f"{' '.join(args)}: JSON round trip")
    check(doc["status"]["exit_code"] == p.returncode, f"{' '.join(args)}: status echoes the exit code")
    return p.returncode, doc, p.stderr


def check(ok, what):
    print(("ok    " if ok else "FAIL  ") + what)
    if not ok:
        failures.append(what)


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


def diag(m):
    return [m[i][i] for i in range(len(m))]


def off_diagonal_zero(m, tol=1e-12):
    return all(abs(m[i][j]) <= tol for i in range(len(m)) for j in range(len(m)) if i != j)


def phi(doc, k):
    return doc["outputs"]["phi"][k - 1]["matrix"]


# eval
rc, doc, _ = report("eval", "--case", "III", "--params", "a=1")
check(rc == 0, "eval III exits 0")
check(all(close(x, 24, 1e-12) for x in diag(phi(doc, 1))) and off_diagonal_zero(phi(doc, 1)), "eval III: Phi_1 = 24 I")
check(all(close(x, 36, 1e-12) for x in diag(phi(doc, 7))) and off_diagonal_zero(phi(doc, 7)), "eval III: Phi_7 = 36 I")
check(close(doc["outputs"]["tau"], 12, 1e-12), "eval III: tau = 12")
check(len(doc["outputs"]["riemann"]) == 6, "eval III: six sectional components")

rc, b3, _ = report("eval", "--case", "IV", "--params", "a=1,b=3")
_, b1, _ = report("eval", "--case", "IV", "--params", "a=1,b=1")
check(rc == 0, "eval IV exits 0")
same = all(
    close(x, y, 1e-12)
    for k in range(1, 11)
    for rx, ry in zip(phi(b3, k), phi(b1, k))
    for x, y in zip(rx, ry)
)
check(same, "eval IV: no invariant depends on b")
p10 = diag(phi(b3, 10))
check(all(close(x, y, 1e-12) for x, y in zip(p10[1:], [-8, -4, -4])), "eval IV: Phi_10 entries (2,2)..(4,4) = -8, -4, -4")
check(abs(sum(p10)) <= 1e-12, "eval IV: Phi_10 is trace free, as tr(rough lap rho) = lap tau = 0")
check(b3["outputs"]["point"] is None, "eval IV: homogeneous, no point")

rc, doc, _ = report("eval", "--case", "file:flat4.metric", "--point", "0,0,0,0")
check(rc == 0, "eval flat file exits 0")
check(all(x == 0 for p in doc["outputs"]["phi"] for row in p["matrix"] for x in row), "eval flat file: all Phi vanish")
check(doc["outputs"]["riemann"] == [] and doc["outputs"]["tau"] == 0, "eval flat file: R and tau vanish")

rc, doc, _ = report("eval", "--case", "V", "--point", "0.3,0.1,0.2,0.4", "--frame", "coordinate")
check(rc == 0 and doc["outputs"]["frame"] == "coordinate", "eval V in the coordinate frame")

p = run("eval", "--case", "II", "--format", "csv")
lines = p.stdout.strip().splitlines()
check(p.returncode == 0 and lines[0] == "invariant,i,j,value", "eval csv header")
check(sum(1 for l in lines if l.startswith("Phi_")) == 160, "eval csv: one row per (invariant, i, j)")

p = run("eval", "--case", "I", "--format", "pretty")
check(p.returncode == 0 and "Phi_10" in p.stdout and "|" in p.stdout, "eval pretty prints blocked matrices")

with tempfile.NamedTemporaryFile("w", suffix=".metric", delete=False) as f:
    f.write("dim = 2\ng[1][1] = 1\ng[2][2] = -1\n")
    bad_metric = f.name
p = run("eval", "--case", "file:" + bad_metric, "--point", "0,0")
check(p.returncode == 1 and p.stderr, "eval on an indefinite metric exits 1 with a message")
os.unlink(bad_metric)

with tempfile.NamedTemporaryFile("w", suffix=".metric", delete=False) as f:
    f.write("dim = 2\ng[1][1] = 1 +\n")
    broken = f.name
p = run("eval", "--case", "file:" + broken)
check(p.returncode == 2 and "line 2" in p.stderr, "unparsable metric file exits 2 with its position")
os.unlink(broken)

check(run("eval", "--case", "VI").returncode == 2, "unknown case exits 2")
check(run("eval", "--case", "III", "--params", "a=0").returncode == 2, "vanishing curvature parameter exits 2")
check(run("eval", "--case", "III", "--point", "0,0").returncode == 2, "point of the wrong dimension exits 2")
check(run("eval", "--case", "III", "--frame", "polar").returncode == 2, "bad --frame exits 2")
check(run("eval").returncode == 2, "missing --case exits 2")
check(run("frobnicate").returncode == 2, "unknown command exits 2")
check(run("--help").returncode == 0, "--help exits 0")

# solve
rc, doc, _ = report("solve")
out = doc["outputs"]
check(rc == 0, "solve exits 0")
check(out["rows"] == 70 and out["nullspace_dimension"] == 1, "solve: 70 rows, nullspace dimension 1")
universal = [0.25, -1, 0.25, -1, 2, 1, -1, 0, 0, 0]
check(all(abs(c - u) <= 1e-6 for c, u in zip(out["coefficients"], universal)), "solve: recovered vector")
check(all(c["passed"] for c in out["relation_checks"]), "solve: quoted relations hold for the recovered vector")

rc, doc, _ = report("solve", "--cases", "I,II,III")
check(rc == 3, "solve I,II,III exits 3")
check(doc["outputs"]["nullspace_dimension"] == 5 and doc["outputs"]["coefficients"] is None, "solve I,II,III: nullspace dimension 5")
check(len(doc["outputs"]["singular_values"]) == 10, "solve I,II,III: singular values reported")

rc, doc, err = report("solve", "--tol", "1e-2")
check("warning" in err and doc["warnings"], "solve --tol 1e-2 warns")

rc, doc, _ = report("solve", "--seed", "3", env={"CURVLAB_SEED": "11"})
check(doc["inputs"]["seed"] == 11 and doc["inputs"]["seed_source"] == "CURVLAB_SEED", "CURVLAB_SEED overrides --seed")
check(run("solve", env={"CURVLAB_SEED": "x"}).returncode == 2, "malformed CURVLAB_SEED exits 2")
check(run("solve", "--points-per-case", "0").returncode == 2, "--points-per-case 0 exits 2")
check(run("solve", "--format", "csv").returncode == 2, "solve has no csv output")

# fuzz
rc, doc, _ = report("fuzz", "--dim", "4", "--trials", "100", "--seed", "7")
check(rc == 0 and doc["outputs"]["all_passed"], "fuzz dim 4 exits 0")
check(doc["outputs"]["max_relative_residual"] <= 1e-7, "fuzz dim 4: residual within 1e-7")
_, again, _ = report("fuzz", "--dim", "4", "--trials", "100", "--seed", "7")
check(again["outputs"] == doc["outputs"], "fuzz: identical seeds give identical reports")

rc, doc, _ = report("fuzz", "--dim", "5", "--trials", "50", "--seed", "7")
check(rc == 0 and not doc["outputs"]["judged"], "fuzz dim 5 exits 0, report only")
check(doc["outputs"]["fraction_above_genericity"] >= 0.95, "fuzz dim 5: generic violation")
check(run("fuzz", "--trials", "0").returncode == 2, "fuzz --trials 0 exits 2")
check(run("fuzz", "--dim", "9").returncode == 2, "fuzz --dim 9 exits 2")

# oracle
rc, doc, _ = report("oracle", "--case", "V", "--point", "0.3,0.1,0.2,0.4")
check(rc == 0 and doc["outputs"]["max_relative"] <= 1e-5, "oracle V agrees")
rc, doc, _ = report("oracle", "--case", "flat")
check(rc == 0 and doc["outputs"]["max_relative"] == 0, "oracle flat agrees exactly")
check(run("oracle", "--case", "IV").returncode == 2, "oracle IV exits 2")
check(run("oracle", "--case", "V", "--h", "0").returncode == 2, "oracle --h 0 exits 2")
rc, doc, _ = report("oracle", "--case", "V", "--point", "0.3,0.1,0.2,0.4", "--h", "0.3")
check(rc == 5 and not doc["outputs"]["passed"], "oracle with a coarse step exits 5")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
