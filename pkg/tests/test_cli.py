import tomllib

import pytest
from typer.testing import CliRunner

from detcomplex.cli import app
from detcomplex.cli.app import find_workdir

runner = CliRunner()


def run(*args, input=None):
    return runner.invoke(app, [str(a) for a in args], input=input)


def write(workdir, name, text):
    path = workdir / name
    path.write_text(text)
    return path


#
# Worked examples
#

def test_eval_hoperm_ones(workdir):
    """hoperm_3 at the all-ones matrix prints 48"""
    ones = write(workdir, "ones.txt", "1 1 1 1 1 1\n" * 3)
    result = run("eval", "--family", "hoperm", "--n", 3, "--matrix", ones)
    assert result.exit_code == 0
    assert result.stdout == "48\n"


def test_certify_perm_3(workdir):
    """perm_3 certificate: rank 9, lower bound 5, upper bound 7"""
    result = run("certify", "--family", "perm", "--n", 3)
    assert result.exit_code == 0
    data = tomllib.loads(result.stdout)
    assert data['kind'] == 'certificate'
    assert data['result']['rank'] == 9
    assert data['result']['lower_bound_int'] == 5
    assert data['result']['upper_bound'] == 7


def test_detrep_build_mperm(workdir):
    """mperm_(2,1) compiles to a 5x5 document"""
    result = run("detrep", "build", "--family", "mperm", "--comp", "2,1")
    assert result.exit_code == 0
    data = tomllib.loads(result.stdout)
    assert data['size'] == 5
    assert len(data['matrix']['rows']) == 5


#
# Commands
#

def test_eval_methods_agree(workdir):
    """brute and rec print the same value"""
    m = write(workdir, "m.txt", "1 2\n3 4\n5 6\n")
    outputs = {run("eval", "-f", "mperm", "-c", "2,1", "-m", m, "--method", method).stdout
               for method in ("brute", "rec")}
    assert outputs == {"68\n"}


def test_eval_from_stdin(workdir):
    """- reads the matrix from standard input"""
    result = run("eval", "-f", "perm", "-n", 2, "--matrix", "-", input="1 2\n3 4\n")
    assert result.stdout == "10\n"


def test_special(workdir):
    """All-ones value and the explicit zero"""
    assert run("special", "ones", "-f", "mperm", "-c", "2,1").stdout == "3\n"
    assert run("special", "zero", "-f", "mperm", "-c", "2,1").stdout == "1 1\n1 1\n-1/2 1\n"
    assert run("special", "zero", "-f", "hoperm", "-n", 2).stdout == "1 1 1 1\n1 -3 1 1\n"


def test_detrep_round_trip(workdir):
    """build to a file, then verify it without re-deriving anything"""
    out = workdir / "reps" / "perm3.toml"
    result = run("detrep", "build", "-f", "perm", "-n", 3, "--out", out)
    assert result.exit_code == 0
    assert result.stdout == ""
    result = run("detrep", "verify", "--detrep", out, "--trials", 4, "--seed", 9)
    assert result.exit_code == 0
    data = tomllib.loads(result.stdout)
    assert (data['result'], data['trials'], data['seed']) == ("pass", 4, 9)


def test_detrep_verify_failure(workdir):
    """A representation checked against the wrong family fails with exit code 1"""
    out = workdir / "perm2.toml"
    run("detrep", "build", "-f", "perm", "-n", 2, "--out", out)
    result = run("detrep", "verify", "--detrep", out, "-f", "mperm", "-c", "2", "--trials", 5)
    assert result.exit_code == 1
    assert 'result = "fail"' in result.stdout


def test_detrep_from_poset(workdir):
    """Compile a poset file"""
    poset = write(workdir, "chain.poset", "elem a rank 0\nelem b rank 1\nelem c rank 2\n"
                                          "cover a b label x[1,1]\ncover b c label 2*x[2,1] + 1\n")
    result = run("detrep", "build", "--poset", poset)
    assert result.exit_code == 0
    data = tomllib.loads(result.stdout)
    assert data['size'] == 2
    assert data['sign_fixed'] is True
    assert 'family' not in data


def test_config_defaults_for_verify(workdir):
    """[verify] in the workdir config sets the defaults"""
    (workdir / "config").mkdir()
    (workdir / "config" / "detcomplex.toml").write_text("[verify]\ntrials = 3\nseed = 4\n")
    out = workdir / "rep.toml"
    run("detrep", "build", "-f", "mperm", "-c", "1,2", "--out", out)
    data = tomllib.loads(run("detrep", "verify", "--detrep", out).stdout)
    assert (data['trials'], data['seed']) == (3, 4)


def test_certify_check(workdir):
    """A stored certificate re-validates; a tampered one fails with exit code 1"""
    out = workdir / "cert.toml"
    assert run("certify", "-f", "perm", "-n", 3, "--out", out).exit_code == 0
    result = run("certify", "--check", out)
    assert result.exit_code == 0
    assert result.stdout == "ok perm_3: rank 9, lower bound 5, upper bound 7\n"

    tampered = write(workdir, "bad.toml", out.read_text().replace("rank = 9", "rank = 8"))
    assert run("certify", "--check", tampered).exit_code == 1


def test_certify_check_malformed(workdir):
    """A certificate with an invalid variable is a parse error, exit code 2"""
    out = workdir / "cert.toml"
    run("certify", "-f", "perm", "-n", 3, "--out", out)
    bad = write(workdir, "bad.toml", out.read_text().replace('"x[1,1]"', '"x[0,1]"'))
    result = run("certify", "--check", bad)
    assert result.exit_code == 2
    assert result.exception is None or isinstance(result.exception, SystemExit)


def test_upper_bound(workdir):
    """Representation sizes"""
    assert run("upper-bound", "-f", "hoperm", "-n", 3).stdout == "27\n"
    assert run("upper-bound", "-f", "mperm", "-c", "2,1", "--cross-check").stdout == "5\n"


def test_hessian(workdir):
    """Hessian of perm_3 at its zero, then its rank"""
    result = run("hessian", "-f", "perm", "-n", 3)
    lines = result.stdout.splitlines()
    assert len(lines) == 10
    assert lines[-1] == "rank 9"
    assert lines[0].split()[0] == "0"


def test_hessian_at_point(workdir):
    """--point picks the point"""
    point = write(workdir, "p.txt", "1 2\n3 4\n")
    result = run("hessian", "-f", "perm", "-n", 2, "--point", point)
    assert result.stdout.splitlines()[-1] == "rank 4"


def test_blocks(workdir):
    """Block ranks and determinants"""
    result = run("blocks", "-f", "hoperm", "-n", 3)
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0] == "A 3x3 rank 3 det -4"


def test_limits(workdir):
    """Size caps are listed"""
    lines = run("limits").stdout.splitlines()
    assert "brute_hoperm_max_n 8" in lines
    assert "rec_mperm_max_gamma 20" in lines


def test_poset_commands(workdir):
    """export, validate and eval on the Boolean lattice"""
    exported = run("poset", "export", "-f", "perm", "-n", 2)
    assert exported.exit_code == 0
    poset = write(workdir, "b2.poset", exported.stdout)

    result = run("poset", "validate", poset)
    assert result.stdout == "valid\nelements 4\nrank 2\nminimum {}\nmaximum {1,2}\n"

    point = write(workdir, "p.txt", "1 2\n3 4\n")
    assert run("poset", "eval", "--poset", poset, "--point", point).stdout == "10\n"
    assert run("poset", "eval", "--poset", poset, "--point", point, "-f", "perm", "-n", 2).stdout == "10\n"


#
# Exit codes
#

@pytest.mark.parametrize("args, files", [
    (("eval", "--n", 3, "--matrix", "{m}"), {"m": "1 1\n"}),
    (("eval", "-f", "perm", "-n", 2, "--matrix", "{m}"), {"m": "1 x\n3 4\n"}),
    (("eval", "-f", "perm", "-n", 2, "--matrix", "{m}"), {"m": "1 2 3\n4 5 6\n"}),
    (("eval", "-f", "perm", "-n", 2, "--matrix", "{missing}"), {}),
    (("eval", "-f", "hoperm", "-n", 9, "--method", "brute", "--matrix", "{m}"), {"m": ("1 " * 18 + "\n") * 9}),
    (("certify", "-f", "hoperm", "-n", 2), {}),
    (("eval", "-f", "perm", "-n", 0, "--matrix", "{m}"), {"m": "1\n"}),
    (("poset", "validate", "{p}"), {"p": "elem a rank 0\nelem b rank 2\ncover a b label x[1,1]\n"}),
    (("poset", "validate", "{p}"), {"p": "elem a rank 0\nedge a b\n"}),
    (("--log-level", "LOUD", "limits"), {}),
])
def test_usage_errors_exit_2(workdir, args, files):
    """Usage, parse, shape, size and poset errors exit with 2"""
    paths = {name: write(workdir, name, text) for name, text in files.items()}
    paths["missing"] = workdir / "missing.txt"
    argv = [str(a).format(**paths) for a in args]
    assert run(*argv).exit_code == 2


def test_help_without_command(workdir):
    """No subcommand prints the help"""
    result = run()
    assert result.exit_code == 0
    assert "certify" in result.stdout


def test_find_workdir(tmp_path):
    """The nearest workdir above the start directory is used"""
    nested = tmp_path / "a" / "b"
    nested.mkdir(parents=True)
    assert find_workdir(nested) == nested.resolve() / "workdir"
    (tmp_path / "workdir").mkdir()
    assert find_workdir(nested) == tmp_path.resolve() / "workdir"
