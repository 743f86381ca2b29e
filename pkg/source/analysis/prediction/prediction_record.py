class PredictionRecord(object):
    def __init__(self, title, head_idx, tail_idx, relation_id, score):
        self.title = title
        self.head_idx = head_idx
        self.tail_idx = tail_idx
        self.relation_id = relation_id
        self.score = score

    def key(self):
        return self.title, self.head_idx, self.tail_idx, self.relation_id

    def to_dictionary(self):
        return {'title': self.title, 'h_idx': self.head_idx, 't_idx': self.tail_idx, 'r': self.relation_id,
                'score': self.score}

    def __eq__(self, other):
        return isinstance(other, PredictionRecord) and self.key() == other.key() and self.score == other.score

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"PredictionRecord({self.title!r}, {self.head_idx} -> {self.tail_idx}, {self.relation_id}, "
                f"{self.score:.6f})")
