"""Classical trajectory, action-variable quantization, flux decomposition."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from abcoulomb.errors import DomainError, SupercriticalError
from abcoulomb.semiclassics import (
    ActionVariables,
    ClassicalOrbit,
    classical_trajectory,
    semiclassical_energy,
    topological_charge,
)
from abcoulomb.spectrum import Coupling, admissible_n, dirac_energy, make_channel


class TestClassicalTrajectory:
    def test_perihelion(self):
        orbit = ClassicalOrbit.from_coupling(Coupling(a=0.0, eB=0.25),
                                             energy=1.25,
                                             angular_momentum=0.5)
        assert orbit.r_min == pytest.approx(1.0, rel=1e-15)  # (L0+eB)/p
        samples = classical_trajectory(orbit, np.array([0.0]))
        assert samples[0][1] == pytest.approx(orbit.r_min)

    def test_samples_are_collinear(self):
        orbit = ClassicalOrbit.from_coupling(Coupling(a=0.0, eB=0.3),
                                             energy=1.5,
                                             angular_momentum=2.0, phi0=0.4)
        phi = np.array([-0.8, 0.1, 1.3])
        pts = [(r * math.cos(ph), r * math.sin(ph))
               for ph, r in classical_trajectory(orbit, phi + orbit.phi0 - 0.4)]
        (x1, y1), (x2, y2), (x3, y3) = pts
        area = abs((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1))
        assert area <= 1e-12 * max(abs(x1), abs(x2), abs(x3)) ** 2

    def test_constant_distance_from_origin(self):
        # zero net deflection: the orbit is a straight line at distance r_min
        orbit = ClassicalOrbit.from_coupling(Coupling(a=0.0), energy=2.0,
                                             angular_momentum=1.0, phi0=0.2)
        for ph, r in classical_trajectory(orbit, np.linspace(-1.2, 1.2, 11) + 0.2):
            assert r * math.cos(ph - orbit.phi0) == pytest.approx(orbit.r_min,
                                                                  rel=1e-14)

    def test_domain_errors(self):
        orbit = ClassicalOrbit.from_coupling(Coupling(a=0.0), energy=1.25,
                                             angular_momentum=0.75)
        with pytest.raises(DomainError):
            classical_trajectory(orbit, np.array([2.0]))
        with pytest.raises(DomainError):
            ClassicalOrbit.from_coupling(Coupling(a=0.0), energy=0.9,
                                         angular_momentum=1.0)
        with pytest.raises(DomainError):
            ClassicalOrbit.from_coupling(Coupling(a=0.0, eB=-2.0), energy=1.5,
                                         angular_momentum=1.0)


class TestSemiclassicalEnergy:
    def test_quantized_actions_reproduce_spectrum_exactly(self):
        for a in (0.1, 0.3):
            for eB in (0.0, 0.25):
                c = Coupling(a=a, eB=eB)
                for l in range(-5, 6):
                    ch = make_channel(c, l)
                    if not ch.subcritical or ch.kappa == 0.0:
                        continue
                    for n in range(admissible_n(ch).start, 6):
                        e_exact = dirac_energy(c, l, n).energy
                        e_semi = semiclassical_energy(
                            c, ActionVariables.quantized(l, n))
                        assert e_semi == e_exact  # same algebra, bit-identical

    def test_direct_value(self):
        e = semiclassical_energy(Coupling(a=0.3),
                                 ActionVariables(j_r=0.0, j_phi=0.5))
        assert e == pytest.approx(0.8, abs=1e-15)

    def test_vanishing_coupling(self):
        e = semiclassical_energy(Coupling(a=1e-8),
                                 ActionVariables(j_r=1.0, j_phi=1.5))
        assert e == pytest.approx(1.0, abs=1e-15)

    def test_supercritical(self):
        with pytest.raises(SupercriticalError):
            semiclassical_energy(Coupling(a=0.6),
                                 ActionVariables(j_r=0.0, j_phi=0.5))


class TestTopologicalCharge:
    @pytest.mark.parametrize("eB,q,ip,defect", [
        (2.0, 2.0, 2, 0.0),
        (0.3, 0.3, 0, 0.3),
        (-0.3, -0.3, -1, 0.7),
    ])
    def test_examples(self, eB, q, ip, defect):
        tc = topological_charge(eB)
        assert tc.q == q
        assert tc.integer_part == ip
        assert tc.defect == pytest.approx(defect, abs=1e-15)

    @settings(max_examples=200, deadline=None, derandomize=True)
    @given(eB=st.floats(0.0, 30, allow_nan=False))
    def test_decomposition_identity_nonnegative(self, eB):
        # for q >= 0 the split is float-exact (Sterbenz subtraction)
        tc = topological_charge(eB)
        assert tc.integer_part + tc.defect == eB
        assert 0.0 <= tc.defect < 1.0

    @settings(max_examples=200, deadline=None, derandomize=True)
    @given(eB=st.floats(-30, 0.0, allow_nan=False))
    def test_decomposition_identity_negative(self, eB):
        # crossing zero the floor subtraction may round by one ulp
        tc = topological_charge(eB)
        ulp = math.ulp(max(1.0, abs(eB)))
        assert abs(tc.integer_part + tc.defect - eB) <= ulp
        assert 0.0 <= tc.defect < 1.0

    def test_interval_invariant_in_rounding_corner(self):
        tc = topological_charge(-1e-74)
        assert 0.0 <= tc.defect < 1.0
