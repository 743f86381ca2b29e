import time

from source.analysis.figures.curve_plot_builder import CurvePlotBuilder
from source.analysis.performance.performance_builder import PerformanceBuilder
from source.analysis.prediction.predictor import Predictor
from source.analysis.setup.system_result import SystemResult
from source.analysis.setup.system_type import SystemType
from source.analysis.tables.table_builder import TableBuilder
from source.constants import Constants
from source.corpus.corpus_service import CorpusService
from source.corpus.vocabulary import VocabularyService
from source.encoder.encoder_config import EncoderConfig
from source.training.task_type import TaskType
from source.training.train_config import TrainConfig
from source.training.trainer import Trainer


class ExperimentRunner(object):
    """Trains and scores the systems behind the one-step vs two-step comparison and the
    document vs sentence-scope ablation."""

    @staticmethod
    def with_task(train_config: TrainConfig, task: TaskType):
        settings = train_config.to_dictionary()
        settings['task'] = task.value
        return TrainConfig.from_dictionary(settings)

    @staticmethod
    def with_scope(encoder_config: EncoderConfig, sentence_scoped):
        settings = encoder_config.to_dictionary()
        settings['sentence_scoped'] = sentence_scoped
        return EncoderConfig.from_dictionary(settings)

    @staticmethod
    def run_joint(train_documents, dev_documents, vocabulary, train_config, encoder_config,
                  d_low=Constants.LOW_DIMENSION, sentence_scoped=False, n_workers=1):
        system_type = SystemType.sentence_scope if sentence_scoped else SystemType.joint
        if Constants.VERBOSE:
            print('Running ' + system_type.value + '...')

        bundle = Trainer.train(train_documents, vocabulary, ExperimentRunner.with_task(train_config, TaskType.joint),
                               ExperimentRunner.with_scope(encoder_config, sentence_scoped), d_low=d_low,
                               dev_corpus=dev_documents)
        predictions = Predictor.joint_predict(bundle, dev_documents, vocabulary, n_workers=n_workers)
        report = PerformanceBuilder.micro_f1(predictions, dev_documents)
        return SystemResult(system_type, report, predictions, [bundle])

    @staticmethod
    def run_two_step(train_documents, dev_documents, vocabulary, train_config, encoder_config,
                     d_low=Constants.LOW_DIMENSION, gate_threshold=Constants.GATE_THRESHOLD, n_workers=1):
        if Constants.VERBOSE:
            print('Running ' + SystemType.two_step.value + '...')

        gate_bundle = Trainer.train(train_documents, vocabulary,
                                    ExperimentRunner.with_task(train_config, TaskType.gate),
                                    encoder_config, d_low=d_low, dev_corpus=dev_documents)
        relation_bundle = Trainer.train(train_documents, vocabulary,
                                        ExperimentRunner.with_task(train_config, TaskType.relation),
                                        encoder_config, d_low=d_low, dev_corpus=dev_documents)

        predictions = Predictor.pipeline_predict(gate_bundle, relation_bundle, dev_documents, vocabulary,
                                                 gate_threshold=gate_threshold, n_workers=n_workers)
        step2_accuracy = PerformanceBuilder.step2_accuracy(relation_bundle, dev_documents, vocabulary)
        report = PerformanceBuilder.micro_f1(predictions, dev_documents, step2_accuracy=step2_accuracy)
        return SystemResult(SystemType.two_step, report, predictions, [gate_bundle, relation_bundle])

    @staticmethod
    def compare_two_step(train_documents, dev_documents, vocabulary, train_config, encoder_config,
                         d_low=Constants.LOW_DIMENSION, n_workers=1, description='two_step'):
        system_results = [ExperimentRunner.run_joint(train_documents, dev_documents, vocabulary, train_config,
                                                     encoder_config, d_low=d_low, n_workers=n_workers),
                          ExperimentRunner.run_two_step(train_documents, dev_documents, vocabulary, train_config,
                                                        encoder_config, d_low=d_low, n_workers=n_workers)]
        CurvePlotBuilder.make_pr_plot(system_results, dev_documents, description)
        TableBuilder.print_table_comparison(system_results)
        return system_results

    @staticmethod
    def compare_sentence_scope(train_documents, dev_documents, vocabulary, train_config, encoder_config,
                               d_low=Constants.LOW_DIMENSION, n_workers=1, description='sentence_scope'):
        system_results = [ExperimentRunner.run_joint(train_documents, dev_documents, vocabulary, train_config,
                                                     encoder_config, d_low=d_low, n_workers=n_workers),
                          ExperimentRunner.run_joint(train_documents, dev_documents, vocabulary, train_config,
                                                     encoder_config, d_low=d_low, sentence_scoped=True,
                                                     n_workers=n_workers)]
        CurvePlotBuilder.make_pr_plot(system_results, dev_documents, description)
        TableBuilder.print_table_ablation(system_results)
        return system_results


if __name__ == "__main__":
    start_time = time.time()

    train = CorpusService.load_corpus('train_annotated.json')[:100]
    dev = CorpusService.load_corpus('dev.json')[:50]
    vocab = VocabularyService.build_vocab(train, min_count=2)
    config = TrainConfig(epochs=10, batch_docs=4, seed=0)

    ExperimentRunner.compare_two_step(train, dev, vocab, config, EncoderConfig(vocab_size=len(vocab)))
    # ExperimentRunner.compare_sentence_scope(train, dev, vocab, config, EncoderConfig(vocab_size=len(vocab)))

    end_time = time.time()
    print('Elapsed time to run experiment: ' + str((end_time - start_time) / 60) + ' minutes')
