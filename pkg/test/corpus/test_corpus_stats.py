from source.corpus.corpus_stats import CorpusStatsBuilder
from source.corpus.document import Document, Entity, GoldLabel, Mention
from source.corpus.entity_type import EntityType


def make_document(title, number_of_entities, labels):
    sentence = [f"e{index}" for index in range(number_of_entities)]
    entities = [Entity([Mention(0, index, index + 1, token, EntityType.person)]) for index, token in enumerate(sentence)]
    return Document(title, [sentence], entities, [GoldLabel(h, t, r, []) for h, t, r in labels])


class TestCorpusStats:

    def test_counts_documents_pairs_and_instances(self):
        documents = [make_document('a', 3, [(0, 1, 'P17'), (0, 1, 'P131'), (2, 1, 'P17')]),
                     make_document('b', 2, [(1, 0, 'P6')])]
        stats = CorpusStatsBuilder.corpus_stats(documents)

        assert stats.documents == 2
        assert stats.pairs == 6 + 2
        assert stats.instances == 4
        assert stats.positive_pairs == 3
        assert stats.relation_types == 3
        assert stats.relation_counts == {'P131': 1, 'P17': 2, 'P6': 1}
        assert stats.positive_rate == 3 / 8

    def test_empty_corpus_gives_zeros(self):
        stats = CorpusStatsBuilder.corpus_stats([])
        assert stats.to_dictionary()['instances'] == 0
        assert stats.positive_rate == 0.0

    def test_relation_table_orders_by_frequency(self):
        documents = [make_document('a', 3, [(0, 1, 'P17'), (2, 1, 'P17'), (1, 2, 'P6')])]
        table = CorpusStatsBuilder.relation_table(documents)
        assert list(table['relation_id']) == ['P17', 'P6']
        assert table['name'][0] == 'country'
