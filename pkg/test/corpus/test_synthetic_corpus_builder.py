from source import utils
from source.corpus.pair_enumerator import PairEnumerator
from source.corpus.relation_catalog import RelationCatalog
from source.corpus.synthetic_corpus_builder import SyntheticCorpusBuilder


class TestSyntheticCorpusBuilder:

    def test_same_seed_gives_same_documents(self):
        relation_ids = RelationCatalog.RELATION_IDS[:3]
        first = SyntheticCorpusBuilder.build(utils.make_rng(11), 4, relation_ids)
        second = SyntheticCorpusBuilder.build(utils.make_rng(11), 4, relation_ids)
        assert first == second

    def test_mentions_point_at_their_tokens(self, synthetic_documents):
        for document in synthetic_documents:
            for entity in document.entities:
                for mention in entity.mentions:
                    assert document.sentences[mention.sent_id][mention.start] == mention.name

    def test_labels_use_requested_relations(self, synthetic_documents):
        for document in synthetic_documents:
            assert len(document.gold_labels) == 2
            for label in document.gold_labels:
                assert label.relation_id in RelationCatalog.RELATION_IDS[:5]
                assert label.head_idx != label.tail_idx

    def test_separable_documents_label_one_pair_per_sentence(self):
        documents = SyntheticCorpusBuilder.build_separable(utils.make_rng(3), 2, ['P17', 'P6'])
        for document in documents:
            positives = [pair for pair in PairEnumerator.enumerate_pairs(document) if pair.is_positive]
            assert len(positives) == 3
            for label in document.gold_labels:
                head = document.entities[label.head_idx].mentions[0].name
                assert head == f"subj_{label.relation_id}"
