import os

import pytest

from source.analysis.analysis_runner import ExperimentRunner
from source.analysis.performance.performance_builder import PerformanceBuilder
from source.analysis.prediction.predictor import Predictor
from source.analysis.setup.system_type import SystemType
from source.constants import Constants
from source.corpus.corpus_service import CorpusService
from source.corpus.vocabulary import VocabularyService
from source.encoder.encoder_config import EncoderConfig
from source.training.task_type import TaskType
from source.training.train_config import TrainConfig
from source.training.trainer import Trainer


@pytest.fixture
def settings(synthetic_documents, vocabulary):
    encoder_config = EncoderConfig(vocab_size=len(vocabulary), d_model=8, n_layers=1, n_heads=2, d_ff=16,
                                   max_len=64, dropout_rate=0.0)
    return synthetic_documents[:4], synthetic_documents[4:], vocabulary, TrainConfig(epochs=1, seed=0), encoder_config


class TestExperimentRunner:

    def test_with_task_and_scope_copy_the_configs(self, settings):
        _, _, _, train_config, encoder_config = settings
        assert ExperimentRunner.with_task(train_config, TaskType.gate).task == TaskType.gate
        assert train_config.task == TaskType.joint
        assert ExperimentRunner.with_scope(encoder_config, True).sentence_scoped
        assert not encoder_config.sentence_scoped

    def test_two_step_comparison_reports_both_systems(self, settings):
        results = ExperimentRunner.compare_two_step(*settings, d_low=4)

        assert [result.system_type for result in results] == [SystemType.joint, SystemType.two_step]
        assert [bundle.task for bundle in results[1].bundles] == [TaskType.gate, TaskType.relation]
        assert results[1].report.step2_accuracy is not None
        assert Constants.FIGURE_FILE_PATH.joinpath('two_step_pr.png').exists()

    def test_sentence_scope_ablation_trains_a_scoped_encoder(self, settings):
        results = ExperimentRunner.compare_sentence_scope(*settings, d_low=4)

        assert [result.system_type for result in results] == [SystemType.joint, SystemType.sentence_scope]
        assert results[1].bundles[0].encoder_config.sentence_scoped
        assert 0.0 <= results[1].report.f1 <= 1.0


@pytest.mark.slow
@pytest.mark.skipif(not all(os.path.exists(os.path.join(Constants.DATA_DIR, name))
                            for name in ('train_annotated.json', 'dev.json')),
                    reason='official DocRED splits not downloaded')
def test_desk_pipeline_on_annotated_documents_beats_empty_predictions():
    train = CorpusService.load_corpus('train_annotated.json')[:100]
    held_out = CorpusService.load_corpus('dev.json')[:50]
    vocabulary = VocabularyService.build_vocab(train)
    encoder_config = EncoderConfig(vocab_size=len(vocabulary), d_model=64, n_layers=1, n_heads=4, d_ff=128)

    gate_bundle = Trainer.train(train, vocabulary, TrainConfig(task='gate', epochs=5, na_ratio=1, seed=0),
                                encoder_config, d_low=32)
    relation_bundle = Trainer.train(train, vocabulary, TrainConfig(task='relation', epochs=5, seed=0),
                                    encoder_config, d_low=32)
    predictions = Predictor.pipeline_predict(gate_bundle, relation_bundle, held_out, vocabulary)
    report = PerformanceBuilder.micro_f1(predictions, held_out)

    assert report.false_negatives + report.true_positives == sum(len(d.gold_triples()) for d in held_out)
    assert report.f1 > 0.0
