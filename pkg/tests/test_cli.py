import random

import pytest

from higher_braces import (
    COMMUTATIVE,
    NONCOMMUTATIVE,
    Gen,
    Nabla,
    gens_from_parities,
    koszul_brace,
    parse_json,
    render_json,
    render_latex,
    render_text,
    word_expr,
)
from higher_braces.cli import main
from support import random_expr


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_brace_koszul_text_golden(capsys):
    code, out, _ = run(capsys, "brace", "koszul", "--n", "2", "--parities", "0,0", "--format", "text")
    assert code == 0
    assert out == "∇(a1 a2) - ∇(a1) a2 - ∇(a2) a1\n"


def test_brace_borjeson_text_golden(capsys):
    code, out, _ = run(capsys, "brace", "borjeson", "--n", "3", "--parities", "1,0,0")
    assert code == 0
    assert out == "∇(a1 a2 a3) - ∇(a1 a2) a3 + a1 ∇(a2 a3) - a1 ∇(a2) a3\n"


def test_brace_n_zero_is_usage_error(capsys):
    code, out, err = run(capsys, "brace", "koszul", "--n", "0")
    assert code == 2
    assert out == ""
    assert "error" in err


def test_brace_parity_mismatch(capsys):
    code, _, err = run(capsys, "brace", "koszul", "--n", "3", "--parities", "0,1")
    assert code == 2
    assert "parities" in err


def test_brace_general_matches_library(capsys):
    code, out, _ = run(
        capsys,
        "brace", "general", "--n", "2", "--parities", "0,0",
        "--flavor", "symmetric", "--f-coeffs", "2,3", "--order", "4",
    )
    assert code == 0
    # g1 f2 wrap + g2 f1^2 split terms with f = 2a + 3a^2/2!
    assert "∇(a1 a2)" in out and "∇(a1) a2" in out


def test_brace_latex_format(capsys):
    code, out, _ = run(capsys, "brace", "koszul", "--n", "2", "--parities", "0,0", "--format", "latex")
    assert code == 0
    assert out == r"\nabla(a_{1} a_{2}) - \nabla(a_{1}) a_{2} - \nabla(a_{2}) a_{1}" + "\n"


def test_brace_json_round_trips(capsys):
    code, out, _ = run(capsys, "brace", "koszul", "--n", "3", "--parities", "1,0,1", "--format", "json")
    assert code == 0
    assert parse_json(out) == koszul_brace(gens_from_parities((1, 0, 1)))


def test_series_invert_golden(capsys):
    code, out, _ = run(
        capsys, "series", "invert", "--preset", "exp-minus-one", "--order", "6",
        "--convention", "factorial",
    )
    assert code == 0
    assert out == "1, -1, 2, -6, 24, -120\n"


def test_series_coeffs_c_golden(capsys):
    code, out, _ = run(capsys, "series", "coeffs-c", "--preset", "exp-minus-one", "--r-max", "6")
    assert code == 0
    assert out == "1, -1, 1, -1, 1, -1, 1\n"


def test_series_invert_singular_exit_one(capsys):
    code, out, err = run(capsys, "series", "invert", "--coeffs", "0", "--order", "4")
    assert code == 1
    assert "singular" in err or "not invertible" in err


def test_series_bad_rational_exit_two(capsys):
    code, _, err = run(capsys, "series", "invert", "--coeffs", "1,zz", "--order", "4")
    assert code == 2
    assert "bad rational" in err


def test_series_compose_presets(capsys):
    code, out, _ = run(
        capsys, "series", "compose", "--outer-preset", "exp-minus-one",
        "--inner-preset", "log-one-plus", "--order", "6", "--convention", "factorial",
    )
    assert code == 0
    assert out == "1, 0, 0, 0, 0, 0\n"


def test_unknown_preset_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["series", "invert", "--preset", "mystery", "--order", "4"])
    assert exc.value.code == 2


def test_verify_suites_pass(capsys):
    for argv in (
        ["verify", "c-identity", "--r-max", "12"],
        ["verify", "series-inverse", "--order", "12"],
        ["verify", "pullback-koszul", "--n-max", "3"],
        ["verify", "pullback-borjeson", "--n-max", "3"],
        ["verify", "pullback-general", "--n-max", "3", "--count", "2"],
        ["verify", "linf", "--n-max", "3"],
        ["verify", "ainf", "--n-max", "3"],
    ):
        code, out, err = run(capsys, *argv)
        assert code == 0, (argv, out, err)
        assert "PASS" in out
        assert "elapsed" in err


def test_verify_mutation_fails(capsys):
    code, out, _ = run(capsys, "verify", "linf", "--n-max", "4", "--mutate", "phi2-sign")
    assert code == 1
    assert "FAIL" in out and "residual" in out
    code, out, _ = run(capsys, "verify", "ainf", "--n-max", "4", "--mutate", "b2-sign")
    assert code == 1


def test_verify_wrong_mutation_flag(capsys):
    code, _, err = run(capsys, "verify", "linf", "--n-max", "3", "--mutate", "b2-sign")
    assert code == 2


def test_stdout_determinism(capsys):
    first = run(capsys, "brace", "koszul", "--n", "4", "--parities", "1,1,0,1", "--format", "json")
    second = run(capsys, "brace", "koszul", "--n", "4", "--parities", "1,1,0,1", "--format", "json")
    assert first == second
    v1 = run(capsys, "verify", "pullback-koszul", "--n-max", "3")
    v2 = run(capsys, "verify", "pullback-koszul", "--n-max", "3")
    assert v1[1] == v2[1]  # stdout identical; timing lives on stderr


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "result.txt"
    code, out, _ = run(
        capsys, "brace", "koszul", "--n", "2", "--parities", "0,0", "--out", str(target)
    )
    assert code == 0
    assert target.read_text(encoding="utf-8") == out


def test_json_round_trip_random_exprs():
    rng = random.Random(987)
    for k in range(100):
        flavor = COMMUTATIVE if k % 2 else NONCOMMUTATIVE
        e = random_expr(rng, flavor)
        assert parse_json(render_json(e)) == e


def test_render_text_zero_and_coefficients():
    from higher_braces import Expr
    from fractions import Fraction

    assert render_text(Expr.zero(COMMUTATIVE)) == "0"
    a = Gen(1, 0)
    e = word_expr((a,), COMMUTATIVE, Fraction(3, 2))
    assert render_text(e) == "3/2 a1"
    assert render_latex(e) == r"\tfrac{3}{2} a_{1}"
    assert render_text(e.scale(-1)) == "-3/2 a1"
    nested = word_expr((Nabla((Nabla((a,)), a)),), COMMUTATIVE)
    assert render_text(nested) == "∇(∇(a1) a1)"


def test_render_term_order_is_canonical():
    gens = gens_from_parities((0, 0, 0))
    text = render_text(koszul_brace(gens))
    assert text == (
        "∇(a1 a2 a3) - ∇(a1 a2) a3 - ∇(a1 a3) a2 - ∇(a2 a3) a1"
        " + ∇(a1) a2 a3 + ∇(a2) a1 a3 + ∇(a3) a1 a2"
    )


def test_parse_json_rejects_garbage():
    from higher_braces import UsageError

    with pytest.raises(UsageError):
        parse_json("{not json")
    with pytest.raises(UsageError):
        parse_json('{"flavor": "commutative", "terms": [{"coeff": "1", "word": [{"what": 1}]}]}')


def test_json_preserves_degrees():
    e = word_expr((Gen(1, -1), Gen(2, 2)), COMMUTATIVE)
    back = parse_json(render_json(e))
    assert back == e
    assert back.degree() == 1
