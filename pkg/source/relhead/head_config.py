from source.constants import Constants
from source.errors import ConfigurationError


class HeadConfig(object):
    def __init__(self, d_model, n_classes, d_low=Constants.LOW_DIMENSION, use_bias=True):
        self.d_model = int(d_model)
        self.d_low = int(d_low)
        self.n_classes = int(n_classes)
        self.use_bias = bool(use_bias)

        if self.d_model < 1:
            raise ConfigurationError(f"d_model must be positive, got {self.d_model}")
        if self.d_low < 1:
            raise ConfigurationError(f"d_low must be at least 1, got {self.d_low}")
        if self.n_classes < 2:
            raise ConfigurationError(f"n_classes must be at least 2, got {self.n_classes}")

    def to_dictionary(self):
        return {'d_model': self.d_model, 'd_low': self.d_low, 'n_classes': self.n_classes, 'use_bias': self.use_bias}

    @staticmethod
    def from_dictionary(dictionary):
        return HeadConfig(**dictionary)

    def __eq__(self, other):
        return isinstance(other, HeadConfig) and self.to_dictionary() == other.to_dictionary()
