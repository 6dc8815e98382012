"""Smoke test for the pymultisum extension.

Build and install first:  maturin build --release -o dist && pip install dist/*.whl
"""

import json
from fractions import Fraction
from itertools import combinations
from math import prod

import pymultisum as ms


def brute(values, m):
    return sum((prod(c) for c in combinations(values, m)), Fraction(0))


def main():
    half = ms.Rational("1/2")
    assert half + 1 == ms.Rational(Fraction(3, 2))
    assert (half * 4).to_fraction() == 2
    assert half.numerator == 1 and half.denominator == 2
    try:
        half / 0
    except ZeroDivisionError:
        pass
    else:
        raise AssertionError("division by zero accepted")

    assert ms.partitions(4)[1] == [2, 1, 0, 0]
    assert ms.reduction_coefficient([0, 1]) == ms.Rational("-1/2")

    n_seq = ms.Sequence.index_power(1)
    assert ms.reduce_multiple_sum(n_seq, 2, 1, 4) == 35
    assert ms.brute_multiple_sum(n_seq, 2, 1, 4) == 35

    values = [Fraction(1, 2), Fraction(-2, 3), Fraction(5), Fraction(7, 4), Fraction(-1, 6)]
    seq = ms.Sequence.explicit(values)
    assert ms.Sequence.from_json(seq.to_json()).to_json() == seq.to_json()
    for m in range(len(values) + 1):
        assert ms.reduce_multiple_sum(seq, m, 1, len(values)).to_fraction() == brute(values, m)

    perm, sets = ms.symmetrized_multiple_sum([seq, ms.Sequence.index_power(2)], 1, 5)
    assert perm == sets

    assert ms.coeff_ratio_from_roots(["1", "2", "3"], 2) == 11
    assert [str(c) for c in ms.poly_from_roots([1, 2, 3])] == ["-6/1", "11/1", "-6/1", "1/1"]
    lhs, rhs = ms.derivative_mean_pair(["1", "-2", "1/3", "5"], 2)
    assert lhs == rhs

    assert ms.faulhaber(10, 3) == 3025
    assert ms.multiple_power_sum(3, 4, 1) == 50
    assert str(ms.zeta_even(2)) == "1/90*pi^4"
    z = ms.mzv_even_reduced(4, 1)
    assert z == ms.mzv_closed_form(4, 1)
    assert z.numeric(9) == "0.0261478478"

    report = ms.verify("EVEN_ODD_N", n=3, m=2)
    assert report["equal"] and report["lhs"] == ["9/2", "3/2"]
    sweep = ms.verify("LEMMA_3_1", sweep="m=0..12")
    assert len(sweep) == 13 and all(r["equal"] for r in sweep)
    assert "RECURRENT_BRIDGE" in ms.identity_ids()

    code, out = ms.run_cli(["multisum", "eval", "--m", "2", "--n", "4"])
    assert code == 0 and json.loads(out) == {"brute": "35/1", "reduced": "35/1", "equal": True}

    results = ms.run_selftest()
    for cid, name, passed, detail in results:
        print(f"[{'PASS' if passed else 'FAIL'}] {cid:>2} {name}: {detail}")
    assert all(r[2] for r in results)
    print("smoke test ok")


if __name__ == "__main__":
    main()
