from collections import defaultdict

from source.corpus.document import Document
from source.corpus.relation_catalog import RelationCatalog


class PairInstance(object):
    """Ordered entity pair of one document with its label.

    ``label_class`` is 0 for N/A; ``all_gold_classes`` keeps every gold class of the pair
    so multi-label pairs can be scored against the full set.
    """

    def __init__(self, title, head_idx, tail_idx, label_class, all_gold_classes):
        self.title = title
        self.head_idx = head_idx
        self.tail_idx = tail_idx
        self.label_class = label_class
        self.all_gold_classes = frozenset(all_gold_classes)

    @property
    def is_positive(self):
        return self.label_class != RelationCatalog.NA_CLASS

    def key(self):
        return self.title, self.head_idx, self.tail_idx

    def with_label(self, label_class):
        return PairInstance(self.title, self.head_idx, self.tail_idx, label_class, self.all_gold_classes)

    def __eq__(self, other):
        return (isinstance(other, PairInstance) and self.key() == other.key()
                and self.label_class == other.label_class and self.all_gold_classes == other.all_gold_classes)

    def __hash__(self):
        return hash((self.key(), self.label_class))

    def __repr__(self):
        return f"PairInstance({self.title!r}, {self.head_idx} -> {self.tail_idx}, class={self.label_class})"


class PairEnumerator(object):

    @staticmethod
    def enumerate_pairs(document: Document):
        gold_classes = defaultdict(set)
        for label in document.gold_labels:
            gold_classes[(label.head_idx, label.tail_idx)].add(RelationCatalog.class_index(label.relation_id))

        pairs = []
        number_of_entities = document.number_of_entities
        for head_idx in range(number_of_entities):
            for tail_idx in range(number_of_entities):
                if head_idx == tail_idx:
                    continue
                classes = gold_classes.get((head_idx, tail_idx), set())
                label_class = min(classes) if classes else RelationCatalog.NA_CLASS
                pairs.append(PairInstance(document.title, head_idx, tail_idx, label_class, classes))
        return pairs

    @staticmethod
    def expand_training_views(pairs):
        """One instance per gold relation for multi-label pairs; N/A pairs pass through."""
        views = []
        for pair in pairs:
            if not pair.all_gold_classes:
                views.append(pair)
                continue
            for label_class in sorted(pair.all_gold_classes):
                views.append(pair.with_label(label_class))
        return views
