from source.corpus.document import Document, Entity, GoldLabel, Mention
from source.corpus.entity_type import EntityType
from source.corpus.pair_enumerator import PairEnumerator
from source.corpus.relation_catalog import RelationCatalog


def make_document(number_of_entities, labels):
    sentence = [f"e{index}" for index in range(number_of_entities)]
    entities = [Entity([Mention(0, index, index + 1, token, EntityType.miscellaneous)])
                for index, token in enumerate(sentence)]
    gold_labels = [GoldLabel(head, tail, relation_id, []) for head, tail, relation_id in labels]
    return Document('pairs', [sentence], entities, gold_labels)


class TestPairEnumerator:

    def test_enumerates_every_ordered_pair(self):
        pairs = PairEnumerator.enumerate_pairs(make_document(4, []))
        assert len(pairs) == 12
        assert [pair.key()[1:] for pair in pairs[:3]] == [(0, 1), (0, 2), (0, 3)]
        assert not any(pair.is_positive for pair in pairs)

    def test_single_entity_gives_no_pairs(self):
        assert PairEnumerator.enumerate_pairs(make_document(1, [])) == []

    def test_pairs_are_directional(self):
        pairs = {pair.key()[1:]: pair for pair in PairEnumerator.enumerate_pairs(make_document(2, [(0, 1, 'P17')]))}
        assert pairs[(0, 1)].label_class == RelationCatalog.class_index('P17')
        assert pairs[(1, 0)].label_class == RelationCatalog.NA_CLASS

    def test_multi_label_pair_takes_lowest_class(self):
        pairs = PairEnumerator.enumerate_pairs(make_document(2, [(0, 1, 'P131'), (0, 1, 'P17')]))
        first = pairs[0]
        assert first.label_class == RelationCatalog.class_index('P17')
        assert first.all_gold_classes == {RelationCatalog.class_index('P17'), RelationCatalog.class_index('P131')}

    def test_expand_training_views_gives_one_view_per_relation(self):
        pairs = PairEnumerator.enumerate_pairs(make_document(3, [(0, 1, 'P131'), (0, 1, 'P17'), (2, 0, 'P6')]))
        views = PairEnumerator.expand_training_views(pairs)

        assert len(views) == len(pairs) + 1
        assert sorted(view.label_class for view in views if view.key()[1:] == (0, 1)) == \
            sorted([RelationCatalog.class_index('P17'), RelationCatalog.class_index('P131')])
        assert sum(1 for view in views if not view.is_positive) == 4
