"""Smoke test for the preradlab Python bindings.

Build and install first:
    pip install maturin
    maturin develop -m crates/python/Cargo.toml   # or: pip install --no-build-isolation crates/python
"""

import preradlab_py as pl

z4 = pl.Ring("cyclic(4)")
assert z4.order == 4
m = z4.regular()
assert m.submodules() == [[0], [0, 2], [0, 1, 2, 3]]
assert not m.is_bjkn_prime()
assert m.is_rpid_first()
assert m.is_diuniform()
assert m.is_injective()

s = m.submodule(1)
assert s.order == 2 and s.is_bjkn_prime()

soc = pl.Preradical.parse(z4, "soc")
assert soc.evaluate(m) == [0, 2]
alpha = pl.Preradical.parse(z4, "alpha(1@M)", {"M": m})
assert alpha.compare(soc, z4) == "Less"  # vanishes on the simple module
assert len(z4.lep()) == 3

flags = z4.classify()["flags"]
assert flags["is_v_ring"] is False and flags["is_left_local"] is True

m2 = pl.Ring("matrix(cyclic(2), 2)")
verdict = m2.verify("T14.3")
assert verdict["consistent"] and all(side["holds"] for side in verdict["sides"])

report = pl.run_job("[ring]\nspec = cyclic(4)\n[checks]\nbjkn_prime regular\nverify T15\n")
assert report["exit_code"] == 0
assert report["results"][0]["verdict"] is False

try:
    pl.run_job("[ring]\nspec = cyclic(4)\n[checks]\nbjkn_prime N\n")
except pl.ParseError:
    pass
else:
    raise AssertionError("unresolved name accepted")

try:
    pl.Ring("cyclic(40)")
except pl.CapError:
    pass
else:
    raise AssertionError("cap not enforced")

print("smoke test passed")
