import pytest
from hypothesis import given, settings

import strategies as S
from hoterm.normalize import (PApp, PAtom, PLam, apply_subst, normalize, papp,
                              preterm_type)
from hoterm.terms import (App, Base, Bound, Const, Free, TermTypeError, arrow,
                          eta_expand, lam)

NAT = Base("nat")
SUC = arrow(NAT, NAT)
BIN = arrow(NAT, NAT, NAT)


def num(n: int):
    t = App(Const("0", NAT), ())
    for _ in range(n):
        t = App(Const("s", SUC), (t,))
    return t


class TestNormalize:
    def test_beta_reduction(self):
        # (\x. s(x)) 0  ~>  s(0)
        redex = PApp(PLam("x", NAT, PApp(PAtom(Const("s", SUC)),
                                         PAtom(Bound(0, NAT)))),
                     PAtom(Const("0", NAT)))
        assert normalize(redex) == num(1)

    def test_under_applied_head_is_expanded(self):
        assert normalize(PAtom(Const("s", SUC))) == \
            lam("x", NAT, App(Const("s", SUC), (App(Free("x", NAT), ()),)))

    def test_nested_redexes(self):
        # (\f. f 0) (\x. s(x))  ~>  s(0)
        inner = PLam("x", NAT, PApp(PAtom(Const("s", SUC)),
                                    PAtom(Bound(0, NAT))))
        outer = PLam("f", SUC, PApp(PAtom(Bound(0, SUC)),
                                    PAtom(Const("0", NAT))))
        assert normalize(PApp(outer, inner)) == num(1)

    def test_normal_terms_pass_through(self):
        t = num(3)
        assert normalize(t) == t

    def test_preterm_type_inference(self):
        p = papp(PAtom(Const("add", BIN)), num(1))
        assert preterm_type(p) == SUC

    def test_preterm_type_mismatch(self):
        with pytest.raises(TermTypeError):
            preterm_type(papp(PAtom(Const("s", SUC)),
                              PAtom(Const("nil", Base("natlist")))))


class TestApplySubst:
    def test_higher_order_substitution_renormalizes(self):
        add = Const("add", BIN)
        f = Free("F", BIN)
        subject = App(f, (num(0), num(1)))
        theta = {"F": eta_expand(add)}
        assert apply_subst(subject, theta) == App(add, (num(0), num(1)))

    def test_substitution_under_binder_avoids_capture(self):
        # (\x. F(x))  with F := \y. add(y, X)   keeps X free
        f = Free("F", SUC)
        subject = lam("x", NAT, App(f, (App(Free("x", NAT), ()),)))
        x_var = App(Free("X", NAT), ())
        step = lam("y", NAT, App(Const("add", BIN),
                                 (App(Free("y", NAT), ()), x_var)))
        expected = lam("x", NAT, App(Const("add", BIN),
                                     (App(Free("x", NAT), ()), x_var)))
        assert apply_subst(subject, {"F": step}) == expected

    def test_irrelevant_bindings_ignored(self):
        t = num(2)
        assert apply_subst(t, {"Z": num(0)}) is t

    def test_type_mismatch_rejected(self):
        subject = App(Free("X", NAT), ())
        with pytest.raises(TermTypeError):
            apply_subst(subject, {"X": App(Const("nil", Base("natlist")),
                                           ())})


@settings(max_examples=200)
@given(S.preterms({"c0": Base("a"), "c1": Base("b"),
                   "g": arrow(Base("a"), Base("b"), Base("a")),
                   "h": arrow(arrow(Base("a"), Base("a")), Base("a"))},
                  {"W": arrow(Base("a"), Base("a")), "U": Base("b")},
                  Base("a"), fuel=4))
def test_normalization_is_idempotent(p):
    once = normalize(p)
    assert normalize(once) == once
    assert once.ty == Base("a")
