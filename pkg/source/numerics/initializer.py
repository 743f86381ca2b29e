import math

import numpy as np

from source.numerics.precision import Precision
from source.numerics.tensor import Parameter


class Initializer(object):

    @staticmethod
    def scaled_uniform(rng, shape, name):
        """Uniform in [-b, b] with b = sqrt(6 / (fan_in + fan_out)); stacked matrices use their last two axes."""
        fan_in, fan_out = shape[-2], shape[-1]
        bound = math.sqrt(6.0 / (fan_in + fan_out))
        return Parameter(rng.uniform(-bound, bound, size=shape), name=name)

    @staticmethod
    def zeros(shape, name):
        return Parameter(np.zeros(shape, dtype=Precision.current()), name=name)

    @staticmethod
    def ones(shape, name):
        return Parameter(np.ones(shape, dtype=Precision.current()), name=name)
