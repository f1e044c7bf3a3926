import json
from fractions import Fraction
from pathlib import Path

import pytest

from skeinlab.curves import NormalCurve, torus_table
from skeinlab.cyclotomic import Cyclotomic
from skeinlab.detect import (
    DetectionRequest,
    detect_support,
    detect_theorem2,
    reduced_character_space,
)
from skeinlab.mcg import MappingClass
from skeinlab.repvar import SL2Mat, SL2Rep

FIXTURES = json.loads((Path(__file__).parent / "fixtures" / "derived.json").read_text())

TWIST = [[1, 1], [0, 1]]
IDENTITY = [[1, 0], [0, 1]]


def _req(**kw):
    defaults = dict(genus=1, N=5, curve=(0, 1), phi=MappingClass(1, matrix=TWIST))
    defaults.update(kw)
    return DetectionRequest(**defaults)


def test_twist_certified():
    cert = detect_theorem2(_req())
    assert cert.verdict == "certified-nontrivial"
    assert cert.witness["fiberAlpha"] == 0 and cert.witness["fiberBeta"] == 1 or (
        cert.witness["fiberAlpha"] == 1 and cert.witness["fiberBeta"] == 0
    )
    assert "delta-liftable" in cert.assumptions
    assert cert.to_json() == FIXTURES["detectCertificate"]


def test_identity_inconclusive():
    cert = detect_theorem2(_req(phi=MappingClass(1, matrix=IDENTITY)))
    assert cert.verdict == "inconclusive"
    assert cert.reasons == ["isotopic-curves"]


def test_bound_exceeded_falls_through_to_support():
    # N=3, beta = (4,1): some edge intersected more than N-1 times
    cert = detect_theorem2(_req(N=3, phi=MappingClass(1, matrix=[[1, 4], [0, 1]])))
    beta_max = max(cert.beta_coords)
    assert beta_max > 2
    assert cert.method == "theorem2->support"
    # the support route may still certify; if not, the reason must say why
    if cert.verdict == "inconclusive":
        assert "bound-exceeded" in cert.reasons


def test_support_direct():
    cert = detect_support(_req())
    assert cert.verdict == "certified-nontrivial"
    assert cert.method == "support"


def test_big_cell_route():
    cert = detect_support(_req(cell="big"))
    assert cert.verdict == "certified-nontrivial"
    assert cert.cell == "big"


def test_theorem2_implies_support_on_fixtures():
    for pq, mat in [((0, 1), TWIST), ((1, 0), [[1, 0], [1, 1]]), ((1, 1), [[2, 1], [1, 1]])]:
        t2 = detect_theorem2(_req(curve=pq, phi=MappingClass(1, matrix=mat)))
        sup = detect_support(_req(curve=pq, phi=MappingClass(1, matrix=mat)))
        if t2.verdict == "certified-nontrivial" and t2.method == "theorem2":
            assert sup.verdict == "certified-nontrivial"


def test_monotonicity_in_N():
    for N1, N2 in [(5, 7)]:
        c1 = detect_theorem2(_req(N=N1))
        c2 = detect_theorem2(_req(N=N2))
        if c1.verdict == "certified-nontrivial":
            assert c2.verdict == "certified-nontrivial"


def test_determinism():
    cert1 = json.dumps(detect_theorem2(_req()).to_json(), sort_keys=True)
    cert2 = json.dumps(detect_theorem2(_req()).to_json(), sort_keys=True)
    assert cert1 == cert2


def test_cap_exceeded_reason():
    cert = detect_support(_req(state_cap=3))
    assert cert.verdict == "inconclusive"
    assert "cap-exceeded" in cert.reasons


def test_explicit_beta_supplied():
    table = torus_table()
    alpha = table.curve(0, 1)
    beta = table.curve(1, 1)
    req = DetectionRequest(genus=1, N=5, curve=alpha, beta=beta)
    cert = detect_support(req)
    assert cert.verdict == "certified-nontrivial"


def test_word_phi_requires_beta():
    from skeinlab.mcg import TWIST_ALPHA

    req = DetectionRequest(
        genus=1, N=5, curve=(0, 1), phi=MappingClass(1, words=TWIST_ALPHA)
    )
    with pytest.raises(ValueError):
        detect_support(req)


def test_request_validation():
    with pytest.raises(ValueError):
        DetectionRequest(N=4)
    with pytest.raises(ValueError):
        DetectionRequest(cell="middle")


def test_ambiguous_fibers_path():
    # N far below the intersection numbers: supports collide mod K^0 and
    # no empty/singleton coset pair survives
    table = torus_table()
    req = DetectionRequest(
        genus=1, N=3, curve=table.curve(0, 1), beta=table.curve(5, 1)
    )
    cert = detect_support(req)
    assert cert.verdict == "inconclusive"
    assert cert.reasons == ["fibers-ambiguous"]


def test_disconnected_alpha_rejected():
    table = torus_table()
    doubled = NormalCurve(table.tri, [2 * v for v in table.curve(0, 1).coords])
    req = DetectionRequest(genus=1, N=3, curve=doubled, beta=table.curve(1, 0))
    with pytest.raises(ValueError):
        detect_support(req)


def test_genus_two_explicit_coordinates():
    # curves supported on the two handles of Delta_2, supplied explicitly
    from skeinlab.surface import build_sigma_g_star

    t2 = build_sigma_g_star(2)
    alpha = NormalCurve(t2, {2: 1, 3: 1})
    beta = NormalCurve(t2, {7: 1, 8: 1})
    assert alpha.is_connected() and beta.is_connected()
    cert = detect_theorem2(DetectionRequest(genus=2, N=5, curve=alpha, beta=beta))
    assert cert.verdict == "certified-nontrivial"
    assert cert.method == "theorem2"
    cert = detect_support(
        DetectionRequest(genus=2, N=3, cell="big", curve=alpha, beta=beta)
    )
    assert cert.verdict == "certified-nontrivial"


def test_reduced_character_space():
    i4 = Cyclotomic.zeta(4)
    A = SL2Mat(i4, 0, 0, i4**3)
    B = SL2Mat(1, Fraction(1, 2), -1, Fraction(1, 2))
    rep = SL2Rep(1, (A, B))
    for N in (3, 5):
        out = reduced_character_space(rep, N)
        assert out["liftCount"] == N
        assert len(out["lifts"]) == N
        # z^N = c for every lift
        c = Cyclotomic.from_json(out["boundaryLowerLeft"])
        for lift in out["lifts"]:
            z = Cyclotomic.from_json(lift)
            assert z**N == c.embed(z.order)
    triv = SL2Rep(1, (SL2Mat.identity(), SL2Mat.identity()))
    with pytest.raises(ValueError):
        reduced_character_space(triv, 3)
