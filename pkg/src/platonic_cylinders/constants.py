"""Exact algebraic values of the distinguished angles, distances and radii."""

import math

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
SQRT5 = math.sqrt(5.0)
SQRT6 = math.sqrt(6.0)
TAU = (1.0 + SQRT5) / 2.0

# pair T
DELTA_O6 = math.pi / 4

# pair O
DELTA_O = math.atan(3**0.25 / SQRT2)
D2_O = 2.0 - SQRT3
R_O = 7.0 - 5.0 * SQRT2 - 4.0 * SQRT3 + 3.0 * SQRT6  # = (sqrt3 - 1) / (1 + 2 sqrt2 - sqrt3)
DELTA_O_MIN = math.atan(SQRT2)

# pair I, neighboring branch
TAN_DELTA_I = (6.0 / (5.0 + SQRT5)) ** 0.25
DELTA_I = math.atan(TAN_DELTA_I)
D2_I = (9.0 - SQRT5 - math.sqrt(6.0 * (5.0 + SQRT5))) / 4.0
R_I = 11.0 - 5.0 * SQRT5 + math.sqrt(3.0 * (85.0 - 38.0 * SQRT5))

# pair I, interior zeros of the min curve
DELTA_I_MIN1 = 0.5 * math.atan(2.0 / SQRT5)
DELTA_I_MIN2 = math.pi / 4
DELTA_I_MIN3 = math.atan(TAU)

# tan(delta_max)^2 is a root of this polynomial (ascending coefficients)
DELTA_MAX_POLY = (9.0, -84.0, -4.0, 190.0, 0.0, -80.0, 5.0)

# touching radius of balls centred on the icosidodecahedron around a unit ball
ID_BALL_RADIUS = 1.0 / SQRT5
