import random
from fractions import Fraction

from hypothesis import settings

from isopair import ParamPoint

settings.register_profile("exact", deadline=None, max_examples=100)
settings.load_profile("exact")

SCHIEMANN = ParamPoint(1, 7, 13, 19)
SMALL = ParamPoint(1, 2, 3, 4)


def random_admissible_point(rng: random.Random) -> ParamPoint:
    """A random strictly increasing positive rational 4-tuple."""
    while True:
        values = {Fraction(rng.randint(1, 400), rng.randint(1, 20)) for _ in range(4)}
        if len(values) == 4:
            return ParamPoint(*sorted(values))


def admissible_samples(seed: int, count: int) -> list[ParamPoint]:
    rng = random.Random(seed)
    return [random_admissible_point(rng) for _ in range(count)]
