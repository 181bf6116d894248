import pytest

from charp.errors import FormulaSyntaxError, NotExistential, NotNNF, UnknownConstant
from charp.exactfield.presentation import FieldPresentation
from charp.fixtures import fixture
from charp.logic.ast import (And, Const, Eq, Exists, Forall, InO, Mul, Not, Num, Or, Pow, Sub, Var, atoms,
                             free_vars, is_existential, is_nnf, language, print_formula)
from charp.logic.evaluate import FiniteFieldModel, Verdict, eval_bounded
from charp.logic.parser import parse, parse_term
from charp.logic.rewrite import (eliminate_inequalities, eliminate_valuation, residue_interpretation,
                                 to_nnf)
from charp.series import complete_at

PHI = "E r, s (!InO(r) & InO(r^2*(s^5 - t)))"
F5t = FieldPresentation(5, ["t"])


def test_parse_example_sentence():
    f = parse(PHI, F5t)
    body = And(Not(InO(Var("r"))), InO(Mul(Pow(Var("r"), 2), Sub(Pow(Var("s"), 5), Const("t")))))
    assert f == Exists(("r", "s"), body)
    assert language(f) == "valued"
    assert parse(print_formula(f), F5t) == f


def test_parse_atomic_truth():
    f = parse("0 = 0")
    assert f == Eq(Num(0), Num(0))
    assert eval_bounded(f, FiniteFieldModel.prime(5)).value is True


def test_backquoted_constant_and_unknown():
    f = parse("E x (x = `t + 1`)", F5t)
    assert Const("t + 1") in [a.right for a in atoms(f)]
    with pytest.raises(UnknownConstant):
        parse("E x (x = `q`)", F5t)
    # without a field, bare names are variables
    assert free_vars(parse("x = t")) == {"x", "t"}


@pytest.mark.parametrize("text,pos", [("E x (", 5), ("x = ", 4), ("InO(x", 5), ("x = `t", 4), ("x + = 1", 4)])
def test_syntax_errors_have_positions(text, pos):
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert info.value.position == pos


def test_parse_term_precedence():
    t = parse_term("-x^2 + 2*y*z")
    assert print_formula(Eq(t, Num(0))) == "-x^2 + 2*y*z = 0"


def test_nnf_examples():
    a, b = parse("x = 1"), parse("InO(y)")
    assert to_nnf(Not(And(a, b))) == Or(Not(a), Not(b))
    assert to_nnf(Not(Not(a))) == a
    f = to_nnf(parse("!(E x (InO(x) & x = `t`))", F5t))
    assert f == Forall(("x",), Or(Not(InO(Var("x"))), Not(Eq(Var("x"), Const("t")))))
    assert is_nnf(f) and not is_existential(f)


def test_eliminate_valuation_positive():
    psi = parse("E x (InO(x) & x^2 = `t`)", F5t)
    phi = eliminate_valuation(psi, "X")
    assert print_formula(phi) == "E x (E y (X*x^2 = y^2 - y) & x^2 = `t`)"
    assert language(phi) == "ring" and free_vars(phi) == {"X"}


def test_eliminate_valuation_without_ino():
    psi = parse("E x (x^2 = 2)")
    assert eliminate_valuation(psi, "X") == psi


def test_eliminate_valuation_on_example_counts():
    phi = eliminate_valuation(parse(PHI, F5t))
    assert not any(isinstance(a, InO) for a in atoms(phi))
    # one positive replacement (1 equation) and one negative (2 equations)
    assert sum(1 for _ in atoms(phi)) == 3
    assert free_vars(phi) == {"w"}


def test_eliminate_valuation_errors():
    with pytest.raises(NotExistential):
        eliminate_valuation(parse("A x (InO(x))"))
    with pytest.raises(NotNNF):
        eliminate_valuation(parse("!(E x (InO(x)))"))
    with pytest.raises(ValueError):
        eliminate_valuation(parse("E x (InO(x))"), "x")


def test_residue_interpretation_equation():
    f = residue_interpretation(parse("a = b"))
    assert print_formula(f) == "a = b | E z (z*(a - b) = 1 & !InO(z))"


def test_residue_interpretation_relativizes():
    f = residue_interpretation(parse("E u (u = 0)"))
    assert print_formula(f) == "E u (InO(u) & (u = 0 | E z (z*(u - 0) = 1 & !InO(z))))"
    with pytest.raises(NotExistential):
        residue_interpretation(parse("A u (u = 0)"))


def test_residue_interpretation_doubles_equations():
    theta = parse("E u, v (u*v = 1 & (u = 2 | v = 3))")
    out = residue_interpretation(theta)
    eqs_in = sum(1 for a in atoms(theta) if isinstance(a, Eq))
    eqs_out = sum(1 for a in atoms(out) if isinstance(a, Eq))
    assert eqs_out == 2 * eqs_in


def test_inequality_elimination():
    f = eliminate_inequalities(parse("E x (!(x = 0) & x^2 = 1)"))
    assert print_formula(f) == "E x (E y (x*y = 1) & x^2 = 1)"


def test_eval_finite_examples():
    F5 = FiniteFieldModel.prime(5)
    assert eval_bounded(parse("E x (x^2 = 2)"), F5).value is False
    v = eval_bounded(parse("E x (x = 0)"), F5)
    assert v.value is True and v.witnesses == {"x": 0}
    assert eval_bounded(parse("A x (x^5 = x)"), F5).value is True


def test_eval_in_presented_finite_field():
    L = FieldPresentation(5, ["a"], ["a^2 - 2"])
    M = FiniteFieldModel.of(L)
    assert eval_bounded(parse("E x (x^2 = a)", L), M).value is False
    assert eval_bounded(parse("E x (x^2 = 2)", L), M).value is True


def test_eval_example_on_k3_model():
    M = complete_at(fixture("K3"), 8)
    v = eval_bounded(parse(PHI, fixture("K3").field), M)
    assert v.value is True
    assert M.show(v.witnesses["r"]) == "pi^(-1) + O(pi^8)"
    assert M.show(v.witnesses["s"]) == "X + O(pi^8)"
    # s is the adjoined root: s^5 = pi^2 + t
    s = v.witnesses["s"]
    assert M.equal(M.power(s, 5), M.add(M.pi(2), M.const("t")))


def test_eval_truncated_is_never_false_for_existentials():
    M = complete_at(fixture("K2"), 4)
    assert eval_bounded(parse("E x (x^2 = 2)"), M).value is None


def test_eval_budget_exhaustion():
    v = eval_bounded(parse("E x, y, z (x*y*z = 7 & x = 2 & y = 3 & z = 1)"), FiniteFieldModel.prime(13), 10)
    assert v.value is None and v.exhausted
    assert v.to_json()["budget_exhausted"]


def test_eval_requires_assignment():
    with pytest.raises(ValueError):
        eval_bounded(parse("x = 1"), FiniteFieldModel.prime(3))
    assert eval_bounded(parse("x = 1"), FiniteFieldModel.prime(3), assignment={"x": 1}).value is True


def test_verdict_json():
    assert Verdict(True, {"x": 2}).to_json() == {"verdict": "true", "witnesses": {"x": "2"}}
    assert Verdict(None).to_json() == {"verdict": "unknown"}
