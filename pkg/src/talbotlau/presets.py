"""Built-in parameter sets for one-command reproduction of the headline numbers.

Values are SI. The fullerene presets describe the 990 nm / 0.38 m machine at
its fast and slow velocity classes with a 10% velocity spread; the insulin
preset is the proposed 5730 amu design with 10 nm vibration control.
"""

from .constants import ATOMIC_MASS, STANDARD_GRAVITY

EARTH_ROTATION_RATE = 5.55e-5   # rad/s, parallel component at 48 degrees north

PRESETS = {
    "c70-fast": {
        "period": 990e-9,
        "separation": 0.38,
        "talbot_order": 1,
        "tilt": 1e-3,
        "mass": 840 * ATOMIC_MASS,
        "speed": 200.0,
        "speed_sigma": 20.0,
        "rotation_rate": EARTH_ROTATION_RATE,
        "gravity": STANDARD_GRAVITY,
    },
    "c70-slow": {
        "period": 990e-9,
        "separation": 0.38,
        "talbot_order": 1,
        "tilt": 1e-3,
        "mass": 840 * ATOMIC_MASS,
        "speed": 100.0,
        "speed_sigma": 10.0,
        "rotation_rate": EARTH_ROTATION_RATE,
        "gravity": STANDARD_GRAVITY,
    },
    "insulin": {
        "period": 257e-9,
        "separation": 0.4,
        "talbot_order": 1,
        "tilt": 1e-3,
        "mass": 5730 * ATOMIC_MASS,
        "speed": 300.0,
        "speed_sigma": 30.0,
        "rotation_rate": EARTH_ROTATION_RATE,
        "gravity": STANDARD_GRAVITY,
        "vibration_amplitude": 10e-9,
    },
}
