from source.corpus.entity_type import EntityType


class Mention(object):
    def __init__(self, sent_id, start, end, name, entity_type: EntityType):
        self.sent_id = sent_id
        self.start = start
        self.end = end
        self.name = name
        self.entity_type = entity_type

    def key(self):
        return self.sent_id, self.start, self.end, self.name, self.entity_type

    def __eq__(self, other):
        return isinstance(other, Mention) and self.key() == other.key()

    def __repr__(self):
        return f"Mention({self.name!r}, sent={self.sent_id}, span=[{self.start}, {self.end}))"


class Entity(object):
    def __init__(self, mentions: [Mention]):
        self.mentions = mentions

    @property
    def entity_type(self):
        return self.mentions[0].entity_type

    def __eq__(self, other):
        return isinstance(other, Entity) and self.mentions == other.mentions

    def __repr__(self):
        return f"Entity({self.mentions[0].name!r}, {self.entity_type.value}, mentions={len(self.mentions)})"


class GoldLabel(object):
    def __init__(self, head_idx, tail_idx, relation_id, evidence):
        self.head_idx = head_idx
        self.tail_idx = tail_idx
        self.relation_id = relation_id
        self.evidence = evidence

    def key(self):
        return self.head_idx, self.tail_idx, self.relation_id, tuple(self.evidence)

    def __eq__(self, other):
        return isinstance(other, GoldLabel) and self.key() == other.key()

    def __repr__(self):
        return f"GoldLabel({self.head_idx} -> {self.tail_idx}, {self.relation_id})"


class Document(object):
    def __init__(self, title, sentences, entities: [Entity], gold_labels: [GoldLabel], has_labels=True):
        self.title = title
        self.sentences = sentences
        self.entities = entities
        self.gold_labels = gold_labels
        self.has_labels = has_labels

    @property
    def number_of_entities(self):
        return len(self.entities)

    @property
    def number_of_tokens(self):
        return sum(len(sentence) for sentence in self.sentences)

    def gold_triples(self):
        return {(self.title, label.head_idx, label.tail_idx, label.relation_id) for label in self.gold_labels}

    def __eq__(self, other):
        return (isinstance(other, Document)
                and self.title == other.title
                and self.sentences == other.sentences
                and self.entities == other.entities
                and self.gold_labels == other.gold_labels
                and self.has_labels == other.has_labels)

    def __repr__(self):
        return (f"Document({self.title!r}, sentences={len(self.sentences)}, entities={len(self.entities)}, "
                f"labels={len(self.gold_labels)})")
