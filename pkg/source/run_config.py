import json
from collections import OrderedDict

from source.constants import Constants
from source.encoder.encoder_config import EncoderConfig
from source.errors import ConfigurationError
from source.training.task_type import TaskType
from source.training.train_config import TrainConfig


class RunConfig(object):
    """Flat dotted-key view of every tunable setting.

    Values come from the defaults below, then a flat JSON file, then ``key=value``
    overrides, each layer replacing the previous one.
    """

    DEFAULTS = OrderedDict([
        ('train.task', TaskType.joint.value),
        ('train.lr', Constants.LEARNING_RATE),
        ('train.batch_docs', 4),
        ('train.epochs', 30),
        ('train.seed', 0),
        ('train.na_ratio', float(Constants.NA_RATIO)),
        ('train.subsample_enabled', True),
        ('train.patience', 0),
        ('train.eval_every', 1),
        ('encoder.d_model', 128),
        ('encoder.n_layers', 2),
        ('encoder.n_heads', 4),
        ('encoder.d_ff', 256),
        ('encoder.max_len', Constants.MAX_LEN),
        ('encoder.dropout_rate', 0.1),
        ('encoder.mode', 'transformer'),
        ('encoder.sentence_scoped', False),
        ('head.d_low', Constants.LOW_DIMENSION),
        ('head.use_bias', True),
        ('predict.gate_threshold', Constants.GATE_THRESHOLD),
        ('predict.n_workers', 1),
        ('vocab.min_count', Constants.MIN_COUNT),
    ])

    def __init__(self, values):
        self.values = values

    @staticmethod
    def resolve(config_path=None, overrides=()):
        values = OrderedDict(RunConfig.DEFAULTS)

        if config_path is not None:
            with open(config_path, 'r', encoding='utf-8') as file:
                try:
                    file_values = json.load(file)
                except json.JSONDecodeError as error:
                    raise ConfigurationError(f"{config_path}: not valid JSON ({error})")
            if not isinstance(file_values, dict):
                raise ConfigurationError(f"{config_path}: expected a flat JSON object of dotted keys")
            for key, value in file_values.items():
                values[RunConfig.check_key(key)] = RunConfig.coerce(key, value)

        for override in overrides:
            key, separator, raw = override.partition('=')
            if not separator:
                raise ConfigurationError(f"override {override!r} is not of the form key=value")
            key = RunConfig.check_key(key.strip())
            values[key] = RunConfig.coerce(key, raw.strip())

        return RunConfig(values)

    @staticmethod
    def check_key(key):
        if key not in RunConfig.DEFAULTS:
            raise ConfigurationError(f"unknown config key {key!r}")
        return key

    @staticmethod
    def coerce(key, value):
        default = RunConfig.DEFAULTS[key]
        try:
            if isinstance(default, bool):
                return RunConfig.to_bool(key, value)
            if isinstance(default, int):
                if isinstance(value, float) and not value.is_integer():
                    raise ValueError(value)
                return int(value)
            if isinstance(default, float):
                return float(value)
        except (TypeError, ValueError):
            raise ConfigurationError(f"config key {key!r} expects {type(default).__name__}, got {value!r}")
        return str(value)

    @staticmethod
    def to_bool(key, value):
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in ('true', '1', 'yes'):
            return True
        if text in ('false', '0', 'no'):
            return False
        raise ConfigurationError(f"config key {key!r} expects a boolean, got {value!r}")

    def get(self, key):
        return self.values[RunConfig.check_key(key)]

    def train_config(self, task=None):
        return TrainConfig(task=task if task is not None else self.get('train.task'),
                           learning_rate=self.get('train.lr'),
                           batch_docs=self.get('train.batch_docs'),
                           epochs=self.get('train.epochs'),
                           seed=self.get('train.seed'),
                           na_ratio=self.get('train.na_ratio'),
                           subsample_enabled=self.get('train.subsample_enabled'),
                           patience=self.get('train.patience'),
                           eval_every=self.get('train.eval_every'))

    def encoder_config(self, vocab_size):
        return EncoderConfig(vocab_size=vocab_size,
                             d_model=self.get('encoder.d_model'),
                             n_layers=self.get('encoder.n_layers'),
                             n_heads=self.get('encoder.n_heads'),
                             d_ff=self.get('encoder.d_ff'),
                             max_len=self.get('encoder.max_len'),
                             dropout_rate=self.get('encoder.dropout_rate'),
                             mode=self.get('encoder.mode'),
                             sentence_scoped=self.get('encoder.sentence_scoped'))

    def to_dictionary(self):
        return dict(self.values)
