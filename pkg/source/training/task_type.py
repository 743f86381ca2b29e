from enum import Enum

from source.corpus.relation_catalog import RelationCatalog


class TaskType(Enum):
    gate = 'gate'
    relation = 'relation'
    joint = 'joint'

    @property
    def n_classes(self):
        if self == TaskType.gate:
            return 2
        if self == TaskType.relation:
            return RelationCatalog.NUMBER_OF_RELATIONS
        return RelationCatalog.NUMBER_OF_RELATIONS + 1

    def relation_id(self, target):
        """Relation id a task target stands for; None for the N/A class and for gate targets."""
        if self == TaskType.gate:
            return None
        if self == TaskType.relation:
            return RelationCatalog.relation_id(target + 1)
        return RelationCatalog.relation_id(target)
