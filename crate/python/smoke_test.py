"""Imports the extension and exercises each entry point once."""

import json

import freeboundary_py as fb


def main():
    names = fb.identities()
    assert len(names) == 18 and "hl-6vm-matching" in names

    rep = json.loads(fb.run("qt-symmetry", n=1, alphabet="1"))
    assert rep["status"] == "pass" and rep["residual"] == 0, rep

    rep = json.loads(fb.run("mehler", qt_cap=8))
    assert rep["status"] == "pass", rep

    try:
        fb.run("unknown-name")
    except ValueError as e:
        assert "qt-symmetry" in str(e)
    else:
        raise AssertionError("unknown identity accepted")

    z1 = json.loads(fb.dump_zn(1, 1, qt_cap=2, x_cap=1, param_cap=1))
    assert z1["series"]["terms"][0] == [[0] * len(z1["series"]["variables"]), "1", "1"]

    dist = json.loads(fb.dump_distribution("1/2", params="1/2,-1/4,1/3,-1/5,1/2,1/3", n_max=1, l=1))
    cells = dist["distribution"]
    assert sorted(cells) == ["0/0", "0/1", "1/0", "1/1"]
    num = sum(int(v.split("/")[0]) * 210 // int(v.split("/")[1]) for v in cells.values())
    assert num == 210, cells

    a = fb.sample(5, 20)
    assert a == fb.sample(5, 20) and len(a) == 20
    assert all(len(line.split()) == 3 for line in a)
    try:
        fb.sample(5, 3, params="1/2,1/4,1/3,-1/5,1/2,1/3")
    except ValueError as e:
        assert "ab" in str(e)
    else:
        raise AssertionError("non-stochastic parameters accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
