from source.encoder.encoder_config import EncoderConfig
from source.encoder.encoder_weights import EncoderWeights
from source.errors import ConfigurationError
from source.relhead.head_config import HeadConfig
from source.relhead.head_weights import HeadWeights
from source.training.task_type import TaskType


class ModelBundle(object):
    """Everything needed to score pairs for one task: configs, weights, vocabulary hash and run metadata."""

    def __init__(self, task: TaskType, encoder_config: EncoderConfig, encoder_weights: EncoderWeights,
                 head_config: HeadConfig, head_weights: HeadWeights, vocabulary_hash, metadata=None):
        self.task = TaskType(task)
        if head_config.n_classes != self.task.n_classes:
            raise ConfigurationError(f"{self.task.value} bundle needs {self.task.n_classes} head classes, "
                                     f"got {head_config.n_classes}")
        self.encoder_config = encoder_config
        self.encoder_weights = encoder_weights
        self.head_config = head_config
        self.head_weights = head_weights
        self.vocabulary_hash = vocabulary_hash
        self.metadata = metadata if metadata is not None else {}

    def relation_classes(self):
        return [self.task.relation_id(target) for target in range(self.task.n_classes)]

    def parameters(self):
        return list(self.encoder_weights) + list(self.head_weights)

    def check_vocabulary(self, vocabulary):
        if vocabulary.content_hash != self.vocabulary_hash:
            raise ConfigurationError(f"{self.task.value} bundle was trained with vocabulary "
                                     f"{self.vocabulary_hash[:12]}, got {vocabulary.content_hash[:12]}")

    def __repr__(self):
        return (f"ModelBundle(task={self.task.value}, mode={self.encoder_config.mode.value}, "
                f"steps={self.metadata.get('steps', 0)})")
