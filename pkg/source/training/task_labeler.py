from source.corpus.pair_enumerator import PairInstance
from source.corpus.relation_catalog import RelationCatalog
from source.training.task_type import TaskType


class LabeledPair(object):
    def __init__(self, pair: PairInstance, target):
        self.pair = pair
        self.target = target

    @property
    def key(self):
        return self.pair.key()

    def __eq__(self, other):
        return isinstance(other, LabeledPair) and self.pair == other.pair and self.target == other.target

    def __repr__(self):
        return f"LabeledPair({self.pair.title!r}, {self.pair.head_idx} -> {self.pair.tail_idx}, target={self.target})"


class TaskLabeler(object):

    @staticmethod
    def relabel_for_task(pairs, task: TaskType):
        """Gate targets are 1 for any relation and 0 for N/A; relation targets drop N/A and
        shift classes 1..96 down to 0..95; joint targets keep the class index."""
        task = TaskType(task)
        if task == TaskType.gate:
            return [LabeledPair(pair, int(pair.is_positive)) for pair in pairs]
        if task == TaskType.relation:
            return [LabeledPair(pair, pair.label_class - 1) for pair in pairs
                    if pair.label_class != RelationCatalog.NA_CLASS]
        return [LabeledPair(pair, pair.label_class) for pair in pairs]
