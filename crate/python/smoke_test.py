"""Smoke test for the `waring` extension module.

Build and install first:
    maturin build -m crates/py/Cargo.toml -o dist && pip install dist/waring-*.whl
"""

import json
import random

import waring


def random_vector(n, degrees, k, seed):
    rng = random.Random(seed)
    z = lambda: complex(rng.gauss(0, 1), rng.gauss(0, 1))
    forms = [[z() for _ in range(n + 1)] for _ in range(k)]
    lambdas = [[z() for _ in degrees] for _ in range(k)]
    return waring.PolyVector.from_summands(degrees, forms, lambdas)


def main():
    assert waring.is_perfect(2, [3, 3, 4]) == 7
    assert waring.is_perfect(2, [2, 4]) is None
    assert waring.veronese_count(6, 2) == 254186856

    rep = waring.secant_defect(3, [2, 4], k=9, seed=1)
    assert rep["defect"] == 2 and rep["confidence"] == "probabilistic", rep

    f = random_vector(2, [3, 3, 4], 7, seed=5)
    dec = waring.decompose(f, "auto", seed=0)
    assert dec.k == 7 and dec.error_against(f) < 1e-8, dec
    again = waring.PolyVector.from_json(f.to_json())
    assert again.parts == f.parts
    assert set(json.loads(dec.to_json())) == {"forms", "lambdas", "residual"}

    rep = waring.count_decompositions(2, [2, 3, 3, 3], seed=11)
    assert rep["count"] == 2 and rep["status"] == "stabilized", rep
    assert all(s.residual < 1e-8 for s in rep["solutions"])

    try:
        waring.count_decompositions(2, [2, 4])
    except waring.ValidationError:
        pass
    else:
        raise AssertionError("non-perfect signature accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
