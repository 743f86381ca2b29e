from enum import Enum

from source.constants import Constants
from source.errors import ConfigurationError


class EncoderMode(Enum):
    transformer = 'transformer'
    mean = 'mean'


class EncoderConfig(object):
    def __init__(self, vocab_size, d_model=128, n_layers=2, n_heads=4, d_ff=256, max_len=Constants.MAX_LEN,
                 dropout_rate=0.1, mode=EncoderMode.transformer, sentence_scoped=False):
        self.vocab_size = int(vocab_size)
        self.d_model = int(d_model)
        self.n_layers = int(n_layers)
        self.n_heads = int(n_heads)
        self.d_ff = int(d_ff)
        self.max_len = int(max_len)
        self.dropout_rate = float(dropout_rate)
        try:
            self.mode = EncoderMode(mode)
        except ValueError:
            raise ConfigurationError(f"unknown encoder mode {mode!r}")
        self.sentence_scoped = bool(sentence_scoped)

        if self.vocab_size < 1:
            raise ConfigurationError(f"vocab_size must be positive, got {self.vocab_size}")
        if self.d_model < 1 or self.n_heads < 1 or self.d_model % self.n_heads != 0:
            raise ConfigurationError(f"d_model {self.d_model} must be divisible by n_heads {self.n_heads}")
        if self.n_layers < 0 or self.d_ff < 1:
            raise ConfigurationError(f"invalid layer sizes: n_layers {self.n_layers}, d_ff {self.d_ff}")
        if self.max_len < 1:
            raise ConfigurationError(f"max_len must be at least 1, got {self.max_len}")
        if not 0.0 <= self.dropout_rate < 1.0:
            raise ConfigurationError(f"dropout_rate must lie in [0, 1), got {self.dropout_rate}")

    @property
    def head_width(self):
        return self.d_model // self.n_heads

    def to_dictionary(self):
        return {'vocab_size': self.vocab_size,
                'd_model': self.d_model,
                'n_layers': self.n_layers,
                'n_heads': self.n_heads,
                'd_ff': self.d_ff,
                'max_len': self.max_len,
                'dropout_rate': self.dropout_rate,
                'mode': self.mode.value,
                'sentence_scoped': self.sentence_scoped}

    @staticmethod
    def from_dictionary(dictionary):
        return EncoderConfig(**dictionary)

    def __eq__(self, other):
        return isinstance(other, EncoderConfig) and self.to_dictionary() == other.to_dictionary()
