from source.constants import Constants
from source.errors import ConfigurationError
from source.training.task_type import TaskType


class TrainConfig(object):
    def __init__(self, task=TaskType.joint, learning_rate=Constants.LEARNING_RATE, batch_docs=4, epochs=30, seed=0,
                 na_ratio=Constants.NA_RATIO, subsample_enabled=True, patience=0, eval_every=1):
        try:
            self.task = TaskType(task)
        except ValueError:
            raise ConfigurationError(f"unknown task {task!r}")
        self.learning_rate = float(learning_rate)
        self.batch_docs = int(batch_docs)
        self.epochs = int(epochs)
        self.seed = int(seed)
        self.na_ratio = float(na_ratio)
        self.subsample_enabled = bool(subsample_enabled)
        self.patience = int(patience)
        self.eval_every = int(eval_every)

        if self.learning_rate <= 0:
            raise ConfigurationError(f"learning rate must be positive, got {self.learning_rate}")
        if self.na_ratio < 0:
            raise ConfigurationError(f"na_ratio must be non-negative, got {self.na_ratio}")
        if self.batch_docs < 1:
            raise ConfigurationError(f"batch_docs must be at least 1, got {self.batch_docs}")
        if self.epochs < 0:
            raise ConfigurationError(f"epochs must be non-negative, got {self.epochs}")
        if self.patience < 0 or self.eval_every < 1:
            raise ConfigurationError(f"invalid early stopping settings: patience {self.patience}, "
                                     f"eval_every {self.eval_every}")

    @property
    def n_classes(self):
        return self.task.n_classes

    def to_dictionary(self):
        return {'task': self.task.value,
                'learning_rate': self.learning_rate,
                'batch_docs': self.batch_docs,
                'epochs': self.epochs,
                'seed': self.seed,
                'na_ratio': self.na_ratio,
                'subsample_enabled': self.subsample_enabled,
                'patience': self.patience,
                'eval_every': self.eval_every}

    @staticmethod
    def from_dictionary(dictionary):
        return TrainConfig(**dictionary)
