import pytest

from semimat import (ParseError, Semiring, StructureError, boolean_semiring,
                     builtin_semiring, format_semiring, natural_order,
                     parse_semiring, table_hash, tropical_semiring,
                     verify_axioms, verify_order_laws)

BUILTINS = [boolean_semiring()] + [tropical_semiring(n) for n in range(4)]


def mutate(sr: Semiring, which: str, i, j, val) -> Semiring:
    add = [list(r) for r in sr.add_table]
    mul = [list(r) for r in sr.mul_table]
    zero, one = sr.zero, sr.one
    if which == "add":
        add[i][j] = val
    elif which == "mul":
        mul[i][j] = val
    elif which == "zero":
        zero = val
    elif which == "one":
        one = val
    return Semiring(sr.size, sr.labels, zero, one,
                    tuple(tuple(r) for r in add), tuple(tuple(r) for r in mul))


@pytest.mark.parametrize("sr", BUILTINS, ids=lambda s: f"n{s.size}")
def test_builtins_pass_axioms(sr):
    assert verify_axioms(sr) == []
    assert verify_order_laws(sr).passed


def test_boolean_lookups():
    b = boolean_semiring()
    assert b.add(1, 1) == 1
    assert b.mul(1, 0) == 0
    assert b.natural_leq(0, 1)
    assert not b.natural_leq(1, 0)


def test_tropical_tables_match_min_plus_formulas():
    # independent recomputation from the defining formulas, inf as None
    t = tropical_semiring(2)
    assert t.size == 4
    assert t.zero == 3 and t.labels[t.zero] == "inf"
    assert t.one == 0
    inf = 3

    def val(i):
        return None if i == inf else i

    def idx(v):
        return inf if v is None else v

    for a in t.elements:
        for b in t.elements:
            va, vb = val(a), val(b)
            expect_add = vb if va is None else va if vb is None else min(va, vb)
            expect_mul = None if va is None or vb is None else min(va + vb, 2)
            assert t.add(a, b) == idx(expect_add)
            assert t.mul(a, b) == idx(expect_mul)
    # x + inf = x and x * 0 = x, the two identity laws
    for a in t.elements:
        assert t.add(a, t.zero) == a
        assert t.mul(a, t.one) == a


def test_tropical_mul_is_capped():
    t = tropical_semiring(2)
    assert t.mul(1, 2) == 2  # 1 + 2 capped at 2


def test_tropical_inf_is_minimal():
    t = tropical_semiring(2)
    for a in t.elements:
        assert t.natural_leq(t.zero, a)


def test_tropical_0_isomorphic_to_boolean():
    # brute-force table comparison under 0<->1, inf<->0
    t = tropical_semiring(0)
    b = boolean_semiring()
    assert t.size == 2
    phi = {0: 1, 1: 0}  # tropical index -> boolean index
    assert phi[t.zero] == b.zero
    assert phi[t.one] == b.one
    for x in range(2):
        for y in range(2):
            assert phi[t.add(x, y)] == b.add(phi[x], phi[y])
            assert phi[t.mul(x, y)] == b.mul(phi[x], phi[y])


BOOLEAN_MUTATIONS = [
    ("add", 0, 0, 1, "add-idempotent"),
    ("add", 0, 1, 0, "add-identity"),
    ("add", 1, 0, 0, "add-commutative"),
    ("add", 1, 1, 0, "add-idempotent"),
    ("mul", 0, 0, 1, "zero-annihilates"),
    ("mul", 0, 1, 1, "zero-annihilates"),
    ("mul", 1, 0, 1, "zero-annihilates"),
    ("mul", 1, 1, 0, "mul-identity"),
    ("zero", None, None, 1, "add-identity"),
    ("one", None, None, 0, "mul-identity"),
]


@pytest.mark.parametrize("which,i,j,val,axiom", BOOLEAN_MUTATIONS)
def test_boolean_single_entry_mutations_are_rejected(which, i, j, val, axiom):
    bad = mutate(boolean_semiring(), which, i, j, val)
    violations = verify_axioms(bad)
    assert violations, f"mutation {which}[{i}][{j}]={val} not caught"
    assert axiom in {v.axiom for v in violations}


def test_idempotence_violation_message():
    bad = mutate(boolean_semiring(), "add", 1, 1, 0)
    messages = [v.message for v in verify_axioms(bad)]
    assert "addition not idempotent at a=1" in messages


def test_every_add_table_mutation_is_caught():
    # any diagonal change breaks idempotence, any off-diagonal change
    # breaks commutativity, so these are always rejected
    for sr in BUILTINS:
        for i in range(sr.size):
            for j in range(sr.size):
                for val in range(sr.size):
                    if val == sr.add_table[i][j]:
                        continue
                    assert verify_axioms(mutate(sr, "add", i, j, val)), \
                        f"n={sr.size} add[{i}][{j}]={val} accepted"


def test_every_boolean_mul_mutation_is_caught():
    b = boolean_semiring()
    for i in range(2):
        for j in range(2):
            assert verify_axioms(mutate(b, "mul", i, j, 1 - b.mul_table[i][j]))


def test_some_tropical_mul_mutations_are_genuinely_valid():
    # rewiring 1*1 from 1 to inf in tropical(1) yields the overflow
    # variant of the truncation, a different but perfectly valid
    # semiring, so the verifier accepts it; mutation detection cannot be
    # promised for arbitrary mul-table edits
    overflow = mutate(tropical_semiring(1), "mul", 1, 1, 2)
    assert verify_axioms(overflow) == []
    assert verify_order_laws(overflow).passed


def test_order_antisymmetry_and_heights():
    for sr in BUILTINS:
        order = natural_order(sr)
        for a in sr.elements:
            for b in sr.elements:
                if a != b:
                    assert not (order.leq[a][b] and order.leq[b][a])
                if order.leq[a][b] and a != b:
                    assert order.height[a] < order.height[b]
        assert order.height[sr.zero] == 0


def test_tropical_heights_form_a_chain():
    t = tropical_semiring(2)
    # inf below 2 below 1 below 0 in the natural order
    assert natural_order(t).height == (3, 2, 1, 0)


def test_order_laws_triple_count():
    report = verify_order_laws(tropical_semiring(3))
    assert report.passed
    assert report.triples_checked == 125


def test_one_element_semiring_is_accepted():
    # zero = one is not excluded by any axiom
    sr = Semiring(1, ("e",), 0, 0, ((0,),), ((0,),))
    assert verify_axioms(sr) == []
    assert verify_order_laws(sr).passed


def test_structure_errors_precede_axiom_checks():
    with pytest.raises(StructureError):
        verify_axioms(Semiring(2, ("0", "1"), 0, 1, ((0, 1), (1,)), ((0, 0), (0, 1))))
    with pytest.raises(StructureError):
        verify_axioms(Semiring(2, ("0", "1"), 0, 1, ((0, 5), (1, 1)), ((0, 0), (0, 1))))
    with pytest.raises(StructureError):
        verify_axioms(Semiring(2, ("0", "1"), 3, 1, ((0, 1), (1, 1)), ((0, 0), (0, 1))))


def test_verification_size_limit():
    n = 65
    table = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    big = Semiring(n, tuple(str(i) for i in range(n)), 0, 0, table, table)
    with pytest.raises(StructureError):
        verify_axioms(big)


def test_natural_order_rejects_cycles():
    # 0+1 = 1 and 1+0 = 0 puts 0 and 1 below each other
    bad = Semiring(2, ("0", "1"), 0, 1, ((0, 1), (0, 1)), ((0, 0), (0, 1)))
    with pytest.raises(StructureError):
        natural_order(bad)


def test_builtin_dispatch():
    assert builtin_semiring("boolean") == boolean_semiring()
    assert builtin_semiring("tropical", 2) == tropical_semiring(2)
    with pytest.raises(ValueError):
        builtin_semiring("tropical")
    with pytest.raises(ValueError):
        builtin_semiring("galois")
    with pytest.raises(ValueError):
        tropical_semiring(-1)


def test_format_parse_round_trip():
    for sr in BUILTINS:
        assert parse_semiring(format_semiring(sr)) == sr


def test_parse_matches_builtin():
    text = """
    # the two-element semiring with OR and AND
    semiring 2
    labels 0 1
    zero 0
    one 1
    add
    0 1
    1 1
    mul
    0 0
    0 1
    """
    assert parse_semiring(text) == boolean_semiring()


def test_parse_reports_bad_row():
    text = "semiring 2\nlabels 0 1\nzero 0\none 1\nadd\n0 1\n1\nmul\n0 0\n0 1\n"
    with pytest.raises(ParseError, match="row 1"):
        parse_semiring(text)


def test_parse_reports_out_of_range_zero():
    text = "semiring 2\nlabels 0 1\nzero 2\none 1\nadd\n0 1\n1 1\nmul\n0 0\n0 1\n"
    with pytest.raises(ParseError, match="out of range"):
        parse_semiring(text)


def test_parse_reports_out_of_range_entry():
    text = "semiring 2\nlabels 0 1\nzero 0\none 1\nadd\n0 7\n1 1\nmul\n0 0\n0 1\n"
    with pytest.raises(ParseError, match="out of range"):
        parse_semiring(text)


def test_parse_rejects_trailing_content():
    text = format_semiring(boolean_semiring()) + "extra stuff\n"
    with pytest.raises(ParseError, match="trailing"):
        parse_semiring(text)


def test_table_hash_ignores_labels_only():
    b = boolean_semiring()
    relabeled = Semiring(2, ("bot", "top"), 0, 1, b.add_table, b.mul_table)
    assert table_hash(relabeled) == table_hash(b)
    assert table_hash(mutate(b, "add", 0, 0, 1)) != table_hash(b)
    assert table_hash(mutate(b, "zero", None, None, 1)) != table_hash(b)
