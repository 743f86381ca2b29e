from source.numerics.initializer import Initializer
from source.numerics.parameter_store import ParameterStore
from source.relhead.head_config import HeadConfig


class HeadWeights(ParameterStore):
    PROJECTION_WEIGHT = 'head.projection.weight'
    PROJECTION_BIAS = 'head.projection.bias'
    BILINEAR_WEIGHT = 'head.bilinear.weight'
    CLASS_BIAS = 'head.bilinear.bias'

    @property
    def n_classes(self):
        return self[HeadWeights.BILINEAR_WEIGHT].shape[0]

    @property
    def class_bias(self):
        return self[HeadWeights.CLASS_BIAS] if HeadWeights.CLASS_BIAS in self else None

    @staticmethod
    def initialize(config: HeadConfig, rng):
        parameters = [Initializer.scaled_uniform(rng, (config.d_model, config.d_low), HeadWeights.PROJECTION_WEIGHT),
                      Initializer.zeros((config.d_low,), HeadWeights.PROJECTION_BIAS),
                      Initializer.scaled_uniform(rng, (config.n_classes, config.d_low, config.d_low),
                                                 HeadWeights.BILINEAR_WEIGHT)]
        if config.use_bias:
            parameters.append(Initializer.zeros((config.n_classes,), HeadWeights.CLASS_BIAS))
        return HeadWeights(parameters)
