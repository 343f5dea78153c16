import json
import math

import numpy as np
import pytest

import ncsurf


def test_reduce_relations():
    assert ncsurf.reduce("[x,y] - i*eps*z", "0") == "0"
    assert ncsurf.is_zero("x^2 + y^2 - 1/2 - w", "1/2")
    assert not ncsurf.is_zero("x^2 + y^2 - w", "1/2")


def test_parse_error_offset():
    with pytest.raises(ncsurf.ParseError, match="offset 4"):
        ncsurf.reduce("x + * y")
    assert issubclass(ncsurf.ParseError, ncsurf.Error)


def test_poisson_matches_z():
    value = ncsurf.poisson_at("x", "y", "0.5", 0.3, 0.7)
    assert value == pytest.approx(math.sin(0.6))


def test_topology_and_slice():
    assert ncsurf.topology(-0.5) == "ConvexSphere"
    assert ncsurf.topology(2.0) == "Torus"
    pts = ncsurf.slice_curve(0.5, 16)
    for x, z in pts:
        assert z * z + (x * x - 0.5) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_minimal_sphere_and_matrices():
    rec = ncsurf.solve_minimal_s2(-0.557, 4)
    assert rec.exists
    assert rec.alpha == pytest.approx(0.5, abs=2e-3)
    assert rec.beta_prime == pytest.approx(-2 * rec.alpha)
    rep = ncsurf.build(rec.to_spec())
    assert rep.dim == 4
    assert isinstance(rep.Ap, np.ndarray)
    assert np.allclose(rep.Am, rep.Ap.conj().T)
    assert max(ncsurf.verify_relations(rep).values()) < 1e-12
    assert ncsurf.check_irreducible(rep)
    z = ncsurf.rep_evaluate("ap*am - am*ap", "-0.557", rep)
    assert np.allclose(z, 2 * rep.eps * ncsurf.rep_evaluate("z", "-0.557", rep))


def test_json_round_trip():
    rep = ncsurf.build(ncsurf.ReprSpec("t2finite", 3.0, 5, k=2, beta_prime=2.45, nu=complex(0.5, math.sqrt(3) / 2)))
    text = rep.to_json()
    assert ncsurf.ReprMatrices.from_json(text).to_json() == text
    assert json.loads(text)["nu"] == pytest.approx([0.5, math.sqrt(3) / 2])


def test_invalid_spec():
    with pytest.raises(ncsurf.InvalidSpec):
        ncsurf.build(ncsurf.ReprSpec("s2min", 0.5, 4, alpha=0.3, beta_prime=-0.6))


def test_classifier():
    recs = ncsurf.enumerate_s2_nonminimal(2.22, 11)
    bad = [r for r in recs if abs(r.alpha - 2.40065) < 1e-4]
    assert bad and not bad[0].exists and bad[0].failing_index == 3
    w = ncsurf.t2_beta_window(1.02, 11, 1)
    assert w.kind == "restricted"
    assert ncsurf.t2_inequality_holds(1.02, 11, 1, 0.5 * (w.lower + w.upper))
    assert ncsurf.classify_region(1.05, 0.5)["label"] == "SphereTorus"
    with pytest.raises(ncsurf.DomainError):
        ncsurf.t2_beta_window(2.0, 6, 2)


def test_reference_models():
    fuzzy = ncsurf.build_fuzzy_sphere(3)
    assert fuzzy.eps == 2 / math.sqrt(8)
    U, V, q = ncsurf.build_nc_torus(5, 2, 0.1)
    assert np.allclose(U @ V, q * V @ U)


def test_emitters_and_cli():
    csv = ncsurf.sweep_csv(5, 0.5, 1.5, 3)
    assert csv.splitlines()[0] == "R,n,family,k,alpha,beta_lo,beta_hi,exists,reject_reason"
    svg = ncsurf.diagram_svg(ncsurf.ReprSpec("t2finite", 3.0, 3, k=1, beta_prime=3.1))
    assert svg.count('class="vertex"') == 3 and "forbidden" not in svg
    code, out, err = ncsurf.cli(["topology", "--R", "-0.5"])
    assert code == 0 and json.loads(out)["label"] == "ConvexSphere"
    code, out, err = ncsurf.cli(["reduce", "--R", "0", "--expr", "x + * y"])
    assert code == 2 and json.loads(err)["offset"] == 4
