"""Smoke test for the triscope extension module.

Build and run with:

    maturin develop -m crates/python/Cargo.toml && python python/smoke_test.py
"""

import json
from fractions import Fraction

import triscope


def main():
    ctx = triscope.Context.from_text(triscope.SPORTS_TSV)
    assert ctx.dims == (3, 2, 4), ctx.dims
    assert len(ctx) == 11

    assert ctx.density(["u1", "u2", "u3"], ["i1", "i2"], ["s1", "s2", "s3", "s4"]) == Fraction(11, 24)

    run = ctx.cluster(0)
    assert len(run) == 4
    assert len(ctx.cluster("1")) == 3
    assert sorted(t.density for t in run.triclusters()) == [Fraction(5, 6), 1, 1, 1]
    assert run.by_density()[-1].density == Fraction(5, 6)

    similarity, best, tags, resources = run.recommend("u2")
    assert similarity == Fraction(7, 12)
    assert (best.extent, best.intent, best.modus) == (["u1", "u2", "u3"], ["i1"], ["s1", "s3"])
    assert tags == [] and resources == []

    rows, cols, counts = run.coverage("GM")
    assert (rows, cols, counts) == (["u1", "u2", "u3"], ["i1", "i2"], [[1, 3], [1, 2], [1, 3]])
    assert run.largest("u1", "i2").volume == 6

    assert len(ctx.triconcepts()) == 3

    doc = json.loads(run.document())
    assert doc["format"] == "triscope-results/1"
    assert len(doc["triclusters"]) == 4

    a = triscope.Context.generate(20, 20, 50, "0.05", seed=42)
    b = triscope.Context.generate(20, 20, 50, Fraction(1, 20), seed=42)
    assert a.to_tsv() == b.to_tsv()
    assert a.cluster(0, threads=1).document() == b.cluster(0, threads=4).document()

    try:
        run.recommend("nobody")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown user accepted")

    print("smoke test passed:", run)


if __name__ == "__main__":
    main()
