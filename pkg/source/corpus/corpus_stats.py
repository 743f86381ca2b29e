import pandas as pd

from source.corpus.relation_catalog import RelationCatalog


class CorpusStats(object):
    def __init__(self, documents, relation_types, instances, pairs, positive_pairs, entities, relation_counts):
        self.documents = documents
        self.relation_types = relation_types
        self.instances = instances
        self.pairs = pairs
        self.positive_pairs = positive_pairs
        self.entities = entities
        self.relation_counts = relation_counts

    @property
    def positive_rate(self):
        return self.positive_pairs / self.pairs if self.pairs else 0.0

    def to_dictionary(self):
        return {'documents': self.documents,
                'relation_types': self.relation_types,
                'instances': self.instances,
                'pairs': self.pairs,
                'positive_pairs': self.positive_pairs,
                'positive_rate': self.positive_rate,
                'entities': self.entities,
                'relation_counts': dict(self.relation_counts)}

    def __str__(self):
        return (f"documents       {self.documents:>10,}\n"
                f"relation types  {self.relation_types:>10,}\n"
                f"instances       {self.instances:>10,}\n"
                f"entity pairs    {self.pairs:>10,}\n"
                f"positive pairs  {self.positive_pairs:>10,}\n"
                f"positive rate   {self.positive_rate:>10.4f}")


class CorpusStatsBuilder(object):

    @staticmethod
    def corpus_stats(documents):
        labels = [(document.title, label.head_idx, label.tail_idx, label.relation_id)
                  for document in documents for label in document.gold_labels]
        frame = pd.DataFrame(labels, columns=['title', 'head_idx', 'tail_idx', 'relation_id'])

        pairs = sum(document.number_of_entities * (document.number_of_entities - 1) for document in documents)
        positive_pairs = len(frame[['title', 'head_idx', 'tail_idx']].drop_duplicates()) if len(frame) else 0
        relation_counts = frame['relation_id'].value_counts().sort_index() if len(frame) else pd.Series(dtype=int)

        return CorpusStats(documents=len(documents),
                           relation_types=int(frame['relation_id'].nunique()) if len(frame) else 0,
                           instances=len(frame),
                           pairs=pairs,
                           positive_pairs=positive_pairs,
                           entities=sum(document.number_of_entities for document in documents),
                           relation_counts={relation_id: int(count) for relation_id, count in relation_counts.items()})

    @staticmethod
    def relation_table(documents):
        stats = CorpusStatsBuilder.corpus_stats(documents)
        rows = [(relation_id, RelationCatalog.name(relation_id), count)
                for relation_id, count in stats.relation_counts.items()]
        frame = pd.DataFrame(rows, columns=['relation_id', 'name', 'instances'])
        return frame.sort_values(['instances', 'relation_id'], ascending=[False, True]).reset_index(drop=True)
