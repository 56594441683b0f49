import math

import pytest
from hypothesis import given, strategies as st

from talbotlau import (
    BeamModel,
    InertialEnvironment,
    InterferometerGeometry,
    coriolis_reduction,
    coriolis_shift,
    gravity_reduction,
    gravity_shift,
    mass_bound_fixed_length,
    mass_bound_fixed_period,
    sagnac_phase,
    talbot_length,
    velocity_selection_limit,
)
from talbotlau.constants import ATOMIC_MASS, PLANCK
from talbotlau.errors import InvalidParameter


def _beam(speed, sigma=0.0, mass=840 * ATOMIC_MASS):
    return BeamModel(mass=mass, speed=speed, speed_sigma=sigma)


class TestCoriolisShift:
    def test_published_value(self, c70_geometry, earth_environment):
        shift = coriolis_shift(c70_geometry, _beam(200.0), earth_environment)
        assert shift.displacement == pytest.approx(80.142e-9, rel=1e-4)
        assert shift.displacement == pytest.approx(80e-9, abs=1e-9)
        assert shift.period_fraction == pytest.approx(shift.displacement / 990e-9, rel=1e-15)

    def test_zero_rotation(self, c70_geometry):
        shift = coriolis_shift(c70_geometry, _beam(200.0), InertialEnvironment(rotation_rate=0.0))
        assert shift.displacement == 0.0

    def test_inverse_velocity_scaling(self, c70_geometry, earth_environment):
        shift = coriolis_shift(c70_geometry, _beam(100.0), earth_environment)
        assert shift.displacement == pytest.approx(160.284e-9, rel=1e-4)

    def test_sign_follows_rotation_sense(self, c70_geometry):
        env = InertialEnvironment(rotation_rate=-5.55e-5)
        assert coriolis_shift(c70_geometry, _beam(200.0), env).displacement < 0


class TestCoriolisReduction:
    def test_fast_beam(self, c70_geometry, earth_environment):
        value = coriolis_reduction(c70_geometry, _beam(200.0, 20.0), earth_environment)
        assert value == pytest.approx(0.9987072967, rel=1e-8)

    def test_slow_beam(self, c70_geometry, earth_environment):
        value = coriolis_reduction(c70_geometry, _beam(100.0, 10.0), earth_environment)
        assert value == pytest.approx(0.9948392048, rel=1e-8)

    def test_heavy_slow_scenario(self, c70_geometry, earth_environment):
        value = coriolis_reduction(c70_geometry, _beam(10.0, 1.0), earth_environment)
        assert value == pytest.approx(0.5960588880, rel=1e-8)

    def test_unity_for_monochromatic_or_static(self, c70_geometry, earth_environment):
        assert coriolis_reduction(c70_geometry, _beam(200.0, 0.0), earth_environment) == 1.0
        still = InertialEnvironment(rotation_rate=0.0)
        assert coriolis_reduction(c70_geometry, _beam(200.0, 20.0), still) == 1.0

    def test_invariant_under_rotation_reversal(self, c70_geometry):
        beam = _beam(200.0, 20.0)
        plus = coriolis_reduction(c70_geometry, beam, InertialEnvironment(rotation_rate=5.55e-5))
        minus = coriolis_reduction(c70_geometry, beam, InertialEnvironment(rotation_rate=-5.55e-5))
        assert plus == minus

    @given(
        sigma_pair=st.tuples(st.floats(0.1, 50.0), st.floats(0.1, 50.0)),
        speed=st.floats(60.0, 400.0),
    )
    def test_monotone_in_spread(self, sigma_pair, speed):
        lo, hi = sorted(sigma_pair)
        geom = InterferometerGeometry(period=990e-9, separation=0.38)
        env = InertialEnvironment(rotation_rate=5.55e-5)
        r_lo = coriolis_reduction(geom, _beam(speed, lo), env)
        r_hi = coriolis_reduction(geom, _beam(speed, hi), env)
        assert r_hi <= r_lo

    def test_monotone_in_geometry_and_speed(self, earth_environment):
        base = coriolis_reduction(
            InterferometerGeometry(period=990e-9, separation=0.38),
            _beam(100.0, 10.0), earth_environment)
        longer = coriolis_reduction(
            InterferometerGeometry(period=990e-9, separation=0.76),
            _beam(100.0, 10.0), earth_environment)
        finer = coriolis_reduction(
            InterferometerGeometry(period=495e-9, separation=0.38),
            _beam(100.0, 10.0), earth_environment)
        faster = coriolis_reduction(
            InterferometerGeometry(period=990e-9, separation=0.38),
            _beam(200.0, 10.0), earth_environment)
        assert longer < base and finer < base and faster > base


class TestGravity:
    def test_shift_published_values(self, c70_geometry, earth_environment):
        fast = gravity_shift(c70_geometry, _beam(200.0), earth_environment)
        slow = gravity_shift(c70_geometry, _beam(100.0), earth_environment)
        assert fast.displacement == pytest.approx(35.414e-9, rel=1e-4)
        assert slow.displacement == pytest.approx(141.656e-9, rel=1e-4)
        # quoted rounded values, 3% band
        assert fast.displacement == pytest.approx(36e-9, rel=0.03)
        assert slow.displacement == pytest.approx(144e-9, rel=0.03)

    def test_zero_tilt(self, earth_environment):
        geom = InterferometerGeometry(period=990e-9, separation=0.38, tilt=0.0)
        assert gravity_shift(geom, _beam(200.0), earth_environment).displacement == 0.0

    def test_reduction_insulin(self, insulin_geometry, insulin_beam, earth_environment):
        value = gravity_reduction(insulin_geometry, insulin_beam, earth_environment)
        assert value == pytest.approx(0.9990914289, rel=1e-8)

    def test_reduction_monochromatic(self, c70_geometry, earth_environment):
        assert gravity_reduction(c70_geometry, _beam(200.0, 0.0), earth_environment) == 1.0

    def test_reduction_slow_c70_below_one_percent(self, c70_geometry, earth_environment):
        value = gravity_reduction(c70_geometry, _beam(100.0, 10.0), earth_environment)
        assert value == pytest.approx(0.9959667576, rel=1e-8)
        assert value > 0.99

    @given(speed=st.floats(50.0, 500.0), tilt=st.floats(-1e-2, 1e-2))
    def test_formally_equivalent_to_coriolis(self, speed, tilt):
        # replacing the gravity acceleration by the Coriolis one maps the
        # two shifts onto each other exactly
        geom = InterferometerGeometry(period=990e-9, separation=0.38, tilt=tilt)
        beam = _beam(speed)
        env = InertialEnvironment(rotation_rate=0.0, gravity=9.81)
        equivalent_rate = env.gravity * math.sin(tilt) / (2.0 * speed)
        dx_gravity = gravity_shift(geom, beam, env).displacement
        dx_coriolis = coriolis_shift(
            geom, beam, InertialEnvironment(rotation_rate=equivalent_rate)
        ).displacement
        assert dx_coriolis == pytest.approx(dx_gravity, rel=1e-12, abs=1e-300)


def _bisect(f, lo, hi, iterations=200):
    flo = f(lo)
    for _ in range(iterations):
        mid = math.sqrt(lo * hi)      # geometric midpoint suits huge ranges
        if (f(mid) > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return math.sqrt(lo * hi)


class TestMassBounds:
    period = 990e-9
    sigma = 20.0
    rate = 5.55e-5

    def test_fixed_period_value(self):
        mass = mass_bound_fixed_period(self.period, self.sigma, self.rate)
        assert mass == pytest.approx(6.7732065e-24, rel=1e-6)
        assert mass / ATOMIC_MASS == pytest.approx(4.1e3, rel=0.01)

    def test_fixed_period_bisection_closure(self):
        # independent route: solve contrast = 1/e with the separation pinned
        # to the self-imaging length of the trial mass
        def objective(mass):
            speed = 200.0
            beam = BeamModel(mass=mass, speed=speed, speed_sigma=self.sigma)
            geom = InterferometerGeometry(
                period=self.period,
                separation=talbot_length(
                    InterferometerGeometry(period=self.period, separation=1.0), beam
                ),
            )
            env = InertialEnvironment(rotation_rate=self.rate)
            return coriolis_reduction(geom, beam, env) - math.exp(-1.0)

        solved = _bisect(objective, 1e-27, 1e-18)
        assert mass_bound_fixed_period(self.period, self.sigma, self.rate) == pytest.approx(
            solved, rel=1e-6
        )

    def test_fixed_period_scalings(self):
        base = mass_bound_fixed_period(self.period, self.sigma, self.rate)
        quadrupled = mass_bound_fixed_period(self.period, self.sigma, 4 * self.rate)
        assert quadrupled == pytest.approx(base / 2, rel=1e-12)
        tiny_spread = mass_bound_fixed_period(self.period, 1e-9, self.rate)
        assert tiny_spread > 1e4 * base

    def test_fixed_length_value(self):
        mass = mass_bound_fixed_length(1.0, 200.0, 20.0, self.rate)
        assert mass == pytest.approx(5.4489187e-23, rel=1e-6)
        assert mass / ATOMIC_MASS == pytest.approx(3.3e4, rel=0.01)

    def test_fixed_length_bisection_closure(self):
        # independent route: at fixed separation the first-order period is
        # sqrt(h L / (m v)); solve contrast = 1/e over the mass
        separation, speed, sigma = 1.0, 200.0, 20.0

        def objective(mass):
            period = math.sqrt(PLANCK * separation / (mass * speed))
            geom = InterferometerGeometry(period=period, separation=separation)
            beam = BeamModel(mass=mass, speed=speed, speed_sigma=sigma)
            env = InertialEnvironment(rotation_rate=self.rate)
            return coriolis_reduction(geom, beam, env) - math.exp(-1.0)

        solved = _bisect(objective, 1e-27, 1e-18)
        assert mass_bound_fixed_length(separation, speed, sigma, self.rate) == pytest.approx(
            solved, rel=1e-6
        )

    def test_fixed_length_scalings(self):
        base = mass_bound_fixed_length(1.0, 200.0, 20.0, self.rate)
        assert mass_bound_fixed_length(1.0, 200.0, 10.0, self.rate) == pytest.approx(
            4 * base, rel=1e-12
        )
        assert mass_bound_fixed_length(1.0, 400.0, 20.0, self.rate) == pytest.approx(
            8 * base, rel=1e-12
        )

    def test_positivity_required(self):
        with pytest.raises(InvalidParameter):
            mass_bound_fixed_period(0.0, 20.0, self.rate)
        with pytest.raises(InvalidParameter):
            mass_bound_fixed_length(1.0, 200.0, 20.0, 0.0)


class TestVelocitySelection:
    def test_published_value(self):
        limit = velocity_selection_limit(100e-9, 1.0, 5.55e-5)
        assert limit == pytest.approx(2.0277395e-4, rel=1e-6)
        assert limit == pytest.approx(2e-4, rel=0.05)

    def test_quadratic_in_separation(self):
        one = velocity_selection_limit(100e-9, 1.0, 5.55e-5)
        two = velocity_selection_limit(100e-9, 2.0, 5.55e-5)
        assert two == pytest.approx(one / 4, rel=1e-12)

    def test_beam_at_the_bound_sits_at_one_over_e(self):
        limit = velocity_selection_limit(100e-9, 1.0, 5.55e-5)
        speed = 100.0
        beam = _beam(speed, limit * speed ** 2)
        geom = InterferometerGeometry(period=100e-9, separation=1.0)
        env = InertialEnvironment(rotation_rate=5.55e-5)
        assert coriolis_reduction(geom, beam, env) == pytest.approx(math.exp(-1.0), rel=1e-9)


class TestSagnac:
    def test_zero_rotation(self, c70_geometry):
        env = InertialEnvironment(rotation_rate=0.0)
        assert sagnac_phase(c70_geometry, _beam(200.0), env) == 0.0

    def test_c70_value(self, c70_geometry, earth_environment):
        phase = sagnac_phase(c70_geometry, _beam(200.0), earth_environment)
        assert phase == pytest.approx(0.5523240986, rel=1e-8)

    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_fringe_shift_equals_phase_at_matched_length(self, order, earth_environment):
        # when the separation equals N self-imaging lengths the displacement
        # in periods equals the rotation phase over 2 pi
        period = 990e-9
        mass = 840 * ATOMIC_MASS
        speed = 200.0
        length = order * period ** 2 * mass * speed / PLANCK
        geom = InterferometerGeometry(period=period, separation=length, talbot_order=order)
        beam = _beam(speed)
        phase = sagnac_phase(geom, beam, earth_environment)
        fraction = coriolis_shift(geom, beam, earth_environment).period_fraction
        assert fraction == pytest.approx(phase / (2 * math.pi), rel=1e-12)

    def test_matches_shift_at_matched_speed(self, c70_geometry, earth_environment):
        # 0.38 m is the self-imaging length of C70 at 184.18 m/s; there the
        # direct phase and 2 pi dx / d agree
        beam = _beam(184.179315)
        phase = sagnac_phase(c70_geometry, beam, earth_environment)
        fraction = coriolis_shift(c70_geometry, beam, earth_environment).period_fraction
        assert phase == pytest.approx(2 * math.pi * fraction, rel=1e-6)
