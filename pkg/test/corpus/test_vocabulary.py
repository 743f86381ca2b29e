import pytest

from source.corpus.relation_catalog import RelationCatalog
from source.corpus.vocabulary import Vocabulary, VocabularyService
from source.errors import ValidationError


class TestVocabulary:

    def test_reserved_ids_come_first(self, vocabulary):
        assert vocabulary.id_to_token[:2] == [Vocabulary.PAD_TOKEN, Vocabulary.UNK_TOKEN]
        assert vocabulary.encode('never-seen-token') == Vocabulary.UNK_ID

    def test_tokens_are_case_folded(self, synthetic_documents):
        vocabulary = VocabularyService.build_vocab(synthetic_documents)
        token = synthetic_documents[0].sentences[0][0]
        assert vocabulary.encode(token.upper()) == vocabulary.encode(token)
        assert token.upper() in vocabulary

    def test_ids_order_by_count_then_token(self, synthetic_documents):
        vocabulary = VocabularyService.build_vocab(synthetic_documents)
        ranked = list(zip(vocabulary.counts[2:], vocabulary.id_to_token[2:]))
        assert ranked == sorted(ranked, key=lambda item: (-item[0], item[1]))

    def test_min_count_drops_rare_tokens(self, synthetic_documents):
        full = VocabularyService.build_vocab(synthetic_documents, min_count=1)
        pruned = VocabularyService.build_vocab(synthetic_documents, min_count=3)
        assert len(pruned) < len(full)
        assert min(pruned.counts[2:]) >= 3

    def test_relation_map_covers_the_catalog(self, vocabulary):
        assert len(vocabulary.relation_to_class) == RelationCatalog.NUMBER_OF_RELATIONS == 96
        assert sorted(vocabulary.relation_to_class.values()) == list(range(1, 97))

    def test_write_then_read_keeps_the_hash(self, tmp_path, vocabulary):
        path = tmp_path.joinpath('vocab.tsv')
        VocabularyService.write(vocabulary, path)
        assert VocabularyService.read(path).content_hash == vocabulary.content_hash

    def test_build_is_deterministic(self, synthetic_documents):
        first = VocabularyService.build_vocab(synthetic_documents)
        second = VocabularyService.build_vocab(list(synthetic_documents))
        assert first.id_to_token == second.id_to_token
        assert first == second

    def test_empty_corpus_raises(self):
        with pytest.raises(ValidationError):
            VocabularyService.build_vocab([])

    def test_bad_min_count_raises(self, synthetic_documents):
        with pytest.raises(ValidationError):
            VocabularyService.build_vocab(synthetic_documents, min_count=0)

    def test_malformed_vocab_file_names_the_line(self, tmp_path):
        path = tmp_path.joinpath('vocab.tsv')
        path.write_text('the\t10\nbroken line\n', encoding='utf-8')
        with pytest.raises(ValidationError, match=':2:'):
            VocabularyService.read(path)
