from source.corpus.document import Document, Entity, GoldLabel, Mention
from source.corpus.entity_type import EntityType
from source.errors import ValidationError


class SyntheticCorpusBuilder(object):
    """Seeded generator of small DocRED-shaped documents for fixtures and desk runs."""

    FILLER_SIZE = 40

    @staticmethod
    def build(rng, number_of_documents, relation_ids, entities_per_document=4, sentences_per_document=3,
              relations_per_document=2, sentence_length=8, title_prefix='synthetic'):
        documents = []
        entity_types = list(EntityType)

        for document_index in range(number_of_documents):
            sentences = [[f"w{rng.integers(SyntheticCorpusBuilder.FILLER_SIZE)}" for _ in range(sentence_length)]
                         for _ in range(sentences_per_document)]
            free_slots = {sentence_index: list(rng.permutation(sentence_length))
                          for sentence_index in range(sentences_per_document)}

            entities = []
            for entity_index in range(entities_per_document):
                name = f"{title_prefix}{document_index}e{entity_index}"
                entity_type = entity_types[int(rng.integers(len(entity_types)))]
                number_of_mentions = 1 + int(rng.integers(2))
                mentions = []
                for _ in range(number_of_mentions):
                    sentence_index = SyntheticCorpusBuilder.pick_sentence(rng, free_slots)
                    if sentence_index is None:
                        break
                    position = int(free_slots[sentence_index].pop())
                    sentences[sentence_index][position] = name
                    mentions.append(Mention(sent_id=sentence_index, start=position, end=position + 1,
                                            name=name, entity_type=entity_type))
                if not mentions:
                    raise ValidationError(f"{name}: no free token slot left for a mention")
                entities.append(Entity(mentions))

            gold_labels = SyntheticCorpusBuilder.draw_labels(rng, entities_per_document, relation_ids,
                                                             relations_per_document)
            documents.append(Document(title=f"{title_prefix}-{document_index}", sentences=sentences,
                                      entities=entities, gold_labels=gold_labels))
        return documents

    @staticmethod
    def pick_sentence(rng, free_slots):
        candidates = [index for index, slots in free_slots.items() if slots]
        if not candidates:
            return None
        return candidates[int(rng.integers(len(candidates)))]

    @staticmethod
    def draw_labels(rng, number_of_entities, relation_ids, relations_per_document):
        ordered_pairs = [(head, tail) for head in range(number_of_entities)
                         for tail in range(number_of_entities) if head != tail]
        count = min(relations_per_document, len(ordered_pairs))
        chosen = rng.choice(len(ordered_pairs), size=count, replace=False) if count else []
        labels = []
        for pair_index in sorted(int(index) for index in chosen):
            head, tail = ordered_pairs[pair_index]
            relation_id = relation_ids[int(rng.integers(len(relation_ids)))]
            labels.append(GoldLabel(head_idx=head, tail_idx=tail, relation_id=relation_id, evidence=[]))
        return labels

    @staticmethod
    def build_separable(rng, number_of_documents, relation_ids, pairs_per_document=3, filler_length=4,
                        title_prefix='separable'):
        """Documents whose relation is readable off the mention tokens: the head of a
        relation r is written ``subj_r`` and its tail ``obj_r``."""
        documents = []
        for document_index in range(number_of_documents):
            sentences = []
            entities = []
            gold_labels = []
            for pair_index in range(pairs_per_document):
                relation_id = relation_ids[int(rng.integers(len(relation_ids)))]
                head_name, tail_name = f"subj_{relation_id}", f"obj_{relation_id}"
                filler = [f"w{rng.integers(SyntheticCorpusBuilder.FILLER_SIZE)}" for _ in range(filler_length)]
                sentence = [head_name] + filler + [tail_name]
                sentence_index = len(sentences)
                sentences.append(sentence)

                head_idx = len(entities)
                entities.append(Entity([Mention(sentence_index, 0, 1, head_name, EntityType.miscellaneous)]))
                entities.append(Entity([Mention(sentence_index, len(sentence) - 1, len(sentence), tail_name,
                                                EntityType.miscellaneous)]))
                gold_labels.append(GoldLabel(head_idx=head_idx, tail_idx=head_idx + 1, relation_id=relation_id,
                                             evidence=[sentence_index]))

            documents.append(Document(title=f"{title_prefix}-{document_index}", sentences=sentences,
                                      entities=entities, gold_labels=gold_labels))
        return documents
