import numpy as np

from source.constants import Constants
from source.corpus.document import Document
from source.corpus.vocabulary import Vocabulary
from source.errors import ValidationError


class LinearizedDocument(object):
    def __init__(self, title, token_ids, sentence_ids, entity_positions, out_of_window):
        self.title = title
        self.token_ids = token_ids
        self.sentence_ids = sentence_ids
        self.entity_positions = entity_positions
        self.out_of_window = out_of_window

    @property
    def length(self):
        return len(self.token_ids)

    def surviving_entities(self):
        return [index for index, positions in enumerate(self.entity_positions) if len(positions) > 0]


class DocumentLinearizer(object):

    @staticmethod
    def linearize(document: Document, vocabulary: Vocabulary, max_len=Constants.MAX_LEN):
        if max_len < 1:
            raise ValidationError(f"max_len must be at least 1, got {max_len}")

        token_ids = []
        sentence_ids = []
        offsets = []
        for sentence_index, sentence in enumerate(document.sentences):
            offsets.append(len(token_ids))
            token_ids.extend(vocabulary.encode_all(sentence))
            sentence_ids.extend([sentence_index] * len(sentence))

        token_ids = np.array(token_ids[:max_len], dtype=np.int64)
        sentence_ids = np.array(sentence_ids[:max_len], dtype=np.int64)

        entity_positions = []
        for entity in document.entities:
            positions = set()
            for mention in entity.mentions:
                start = offsets[mention.sent_id] + mention.start
                end = offsets[mention.sent_id] + mention.end
                positions.update(position for position in range(start, end) if position < max_len)
            entity_positions.append(sorted(positions))

        out_of_window = [index for index, positions in enumerate(entity_positions) if len(positions) == 0]
        if out_of_window and Constants.VERBOSE:
            print(f"{document.title}: entities {out_of_window} fall outside the first {max_len} tokens")

        return LinearizedDocument(title=document.title,
                                  token_ids=token_ids,
                                  sentence_ids=sentence_ids,
                                  entity_positions=entity_positions,
                                  out_of_window=out_of_window)
