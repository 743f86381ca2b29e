import json
from pathlib import Path

from source.constants import Constants
from source.corpus.document import Document, Entity, GoldLabel, Mention
from source.corpus.entity_type import EntityType
from source.corpus.relation_catalog import RelationCatalog
from source.errors import IngestionError


class CorpusService(object):
    REQUIRED_FIELDS = ('title', 'sents', 'vertexSet')

    @staticmethod
    def resolve_path(path):
        path = Path(path)
        if not path.is_absolute() and not path.exists():
            candidate = Path(Constants.DATA_DIR).joinpath(path)
            if candidate.exists():
                return candidate
        return path

    @staticmethod
    def load_corpus(path):
        path = CorpusService.resolve_path(path)
        with open(path, 'r', encoding='utf-8') as file:
            try:
                records = json.load(file)
            except json.JSONDecodeError as error:
                raise IngestionError(str(path), -1, f"not valid JSON: {error}")

        if not isinstance(records, list):
            raise IngestionError(str(path), -1, "top level must be a JSON array of document records")

        documents = [CorpusService.parse_record(record, index) for index, record in enumerate(records)]

        first_index = {}
        for index, document in enumerate(documents):
            if document.title in first_index:
                raise IngestionError(document.title, index,
                                     f"duplicate title, first seen at record {first_index[document.title]}")
            first_index[document.title] = index

        if Constants.VERBOSE:
            print(f"Loaded {len(documents)} documents from {path}")
        return documents

    @staticmethod
    def parse_record(record, index):
        if not isinstance(record, dict):
            raise IngestionError(None, index, "record is not a JSON object")
        title = record.get('title')
        for field in CorpusService.REQUIRED_FIELDS:
            if field not in record:
                raise IngestionError(title, index, f"missing field {field!r}")

        sentences = [list(sentence) for sentence in record['sents']]
        entities = [CorpusService.parse_entity(vertex, entity_index, sentences, title, index)
                    for entity_index, vertex in enumerate(record['vertexSet'])]

        has_labels = 'labels' in record
        gold_labels = [CorpusService.parse_label(label, len(entities), title, index)
                       for label in record.get('labels', [])]

        return Document(title=title, sentences=sentences, entities=entities, gold_labels=gold_labels,
                        has_labels=has_labels)

    @staticmethod
    def parse_entity(vertex, entity_index, sentences, title, index):
        if len(vertex) == 0:
            raise IngestionError(title, index, f"entity {entity_index} has no mentions")

        mentions = []
        for mention in vertex:
            try:
                sent_id = mention['sent_id']
                start, end = mention['pos']
                name = mention['name']
                type_code = mention['type']
            except (KeyError, TypeError, ValueError):
                raise IngestionError(title, index, f"entity {entity_index} has a malformed mention {mention!r}")

            if not 0 <= sent_id < len(sentences):
                raise IngestionError(title, index, f"entity {entity_index} mention sentence {sent_id} out of bounds")
            if not 0 <= start < end <= len(sentences[sent_id]):
                raise IngestionError(title, index,
                                     f"entity {entity_index} mention span [{start}, {end}) out of bounds "
                                     f"for sentence {sent_id} of length {len(sentences[sent_id])}")
            try:
                entity_type = EntityType(type_code)
            except ValueError:
                raise IngestionError(title, index, f"entity {entity_index} has unknown type {type_code!r}")

            mentions.append(Mention(sent_id=sent_id, start=start, end=end, name=name, entity_type=entity_type))

        return Entity(mentions)

    @staticmethod
    def parse_label(label, number_of_entities, title, index):
        try:
            head_idx, tail_idx, relation_id = label['h'], label['t'], label['r']
        except (KeyError, TypeError):
            raise IngestionError(title, index, f"malformed label {label!r}")

        if not RelationCatalog.is_known(relation_id):
            raise IngestionError(title, index, f"unknown relation id {relation_id!r}")
        if not (0 <= head_idx < number_of_entities and 0 <= tail_idx < number_of_entities):
            raise IngestionError(title, index,
                                 f"label ({head_idx}, {tail_idx}, {relation_id}) references a missing entity")
        if head_idx == tail_idx:
            raise IngestionError(title, index, f"label ({head_idx}, {tail_idx}, {relation_id}) is reflexive")

        return GoldLabel(head_idx=head_idx, tail_idx=tail_idx, relation_id=relation_id,
                         evidence=list(label.get('evidence', [])))

    @staticmethod
    def to_record(document: Document):
        record = {
            'title': document.title,
            'sents': [list(sentence) for sentence in document.sentences],
            'vertexSet': [[{'name': mention.name,
                            'sent_id': mention.sent_id,
                            'pos': [mention.start, mention.end],
                            'type': mention.entity_type.value} for mention in entity.mentions]
                          for entity in document.entities],
        }
        if document.has_labels:
            record['labels'] = [{'h': label.head_idx,
                                 't': label.tail_idx,
                                 'r': label.relation_id,
                                 'evidence': list(label.evidence)} for label in document.gold_labels]
        return record

    @staticmethod
    def write_corpus(documents, path):
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as file:
            json.dump([CorpusService.to_record(document) for document in documents], file, ensure_ascii=False)
