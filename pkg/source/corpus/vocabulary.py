from collections import Counter
from pathlib import Path

from source import utils
from source.constants import Constants
from source.corpus.relation_catalog import RelationCatalog
from source.errors import ValidationError


class Vocabulary(object):
    PAD_TOKEN = '<pad>'
    UNK_TOKEN = '<unk>'
    PAD_ID = 0
    UNK_ID = 1

    def __init__(self, tokens_with_counts):
        self.id_to_token = [Vocabulary.PAD_TOKEN, Vocabulary.UNK_TOKEN]
        self.counts = [0, 0]
        for token, count in tokens_with_counts:
            self.id_to_token.append(token)
            self.counts.append(count)
        self.token_to_id = {token: index for index, token in enumerate(self.id_to_token)}
        self.relation_to_class = dict(RelationCatalog.CLASS_BY_RELATION)
        self.content_hash = self.compute_hash()

    def __len__(self):
        return len(self.id_to_token)

    def __contains__(self, token):
        return token.lower() in self.token_to_id

    def encode(self, token):
        return self.token_to_id.get(token.lower(), Vocabulary.UNK_ID)

    def encode_all(self, tokens):
        return [self.encode(token) for token in tokens]

    def compute_hash(self):
        token_lines = [f"{token}\t{count}" for token, count in zip(self.id_to_token, self.counts)]
        relation_lines = [f"{relation_id}\t{index}" for relation_id, index in self.relation_to_class.items()]
        return utils.hash_strings(token_lines + relation_lines)

    def __eq__(self, other):
        return isinstance(other, Vocabulary) and self.content_hash == other.content_hash

    def __repr__(self):
        return f"Vocabulary(size={len(self)}, hash={self.content_hash[:12]})"


class VocabularyService(object):

    @staticmethod
    def build_vocab(documents, min_count=Constants.MIN_COUNT):
        if len(documents) == 0:
            raise ValidationError("cannot build a vocabulary from an empty corpus")
        if min_count < 1:
            raise ValidationError(f"min_count must be at least 1, got {min_count}")

        counter = Counter()
        for document in documents:
            for sentence in document.sentences:
                counter.update(token.lower() for token in sentence)

        for special in (Vocabulary.PAD_TOKEN, Vocabulary.UNK_TOKEN):
            counter.pop(special, None)

        kept = [(token, count) for token, count in counter.items() if count >= min_count]
        kept.sort(key=lambda item: (-item[1], item[0]))

        if Constants.VERBOSE:
            print(f"Vocabulary: kept {len(kept)} of {len(counter)} token types (min_count={min_count})")

        return Vocabulary(kept)

    @staticmethod
    def write(vocabulary: Vocabulary, path):
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as file:
            for token, count in zip(vocabulary.id_to_token[2:], vocabulary.counts[2:]):
                file.write(f"{token}\t{count}\n")

    @staticmethod
    def read(path):
        tokens_with_counts = []
        with open(path, 'r', encoding='utf-8') as file:
            for line_number, line in enumerate(file, start=1):
                line = line.rstrip('\n')
                if not line:
                    continue
                token, separator, count = line.rpartition('\t')
                if not separator or not count.isdigit():
                    raise ValidationError(f"{path}:{line_number}: expected 'token<TAB>count'")
                tokens_with_counts.append((token, int(count)))
        return Vocabulary(tokens_with_counts)
