import json
import sys
from pathlib import Path

import click
import joblib
import numpy as np
import pandas as pd
import scipy
import sklearn

from source import utils
from source.analysis.analysis_runner import ExperimentRunner
from source.analysis.performance.performance_builder import PerformanceBuilder
from source.analysis.prediction.prediction_file_service import PredictionFileService
from source.analysis.prediction.predictor import Predictor
from source.analysis.tables.table_builder import TableBuilder
from source.constants import Constants
from source.corpus.corpus_service import CorpusService
from source.corpus.corpus_stats import CorpusStatsBuilder
from source.corpus.vocabulary import VocabularyService
from source.errors import DocRelError
from source.run_config import RunConfig
from source.training.bundle_service import BundleService
from source.training.gradient_check_suite import GradientCheckSuite
from source.training.trainer import Trainer


def versions():
    return {'docrel': Constants.PACKAGE_VERSION,
            'joblib': joblib.__version__,
            'numpy': np.__version__,
            'pandas': pd.__version__,
            'scikit-learn': sklearn.__version__,
            'scipy': scipy.__version__}


def write_manifest(artifact_path, command, run_config: RunConfig, inputs):
    manifest = {'command': command,
                'config': run_config.to_dictionary(),
                'seed': run_config.get('train.seed'),
                'inputs': {str(path): utils.hash_file(CorpusService.resolve_path(path)) for path in inputs},
                'versions': versions()}
    manifest_path = Path(str(artifact_path) + '.manifest.json')
    utils.write_json(manifest_path, manifest)
    return manifest_path


def emit_json(payload):
    click.echo(json.dumps(payload, sort_keys=True, indent=2))


@click.group()
@click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Flat JSON file of dotted config keys.')
@click.option('--set', 'overrides', multiple=True, metavar='KEY=VALUE', help='Override one config key.')
@click.option('--seed', type=int, default=None, help='Seed for every random draw of the run.')
@click.option('--quiet', is_flag=True, help='Suppress progress output.')
@click.pass_context
def docrel(context, config_path, overrides, seed, quiet):
    """Document-level relation extraction at desk scale."""
    if quiet:
        Constants.update('VERBOSE', False)
    overrides = list(overrides) + ([f"train.seed={seed}"] if seed is not None else [])
    context.obj = RunConfig.resolve(config_path, overrides)


@docrel.command()
@click.argument('corpora', nargs=-1, required=True)
@click.option('--latex', is_flag=True, help='Also print a LaTeX statistics table.')
@click.option('--json-out', type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def stats(run_config, corpora, latex, json_out):
    """Corpus statistics: documents, relation types, instances, pairs."""
    stats_by_corpus = {}
    for corpus in corpora:
        corpus_stats = CorpusStatsBuilder.corpus_stats(CorpusService.load_corpus(corpus))
        stats_by_corpus[Path(corpus).stem] = corpus_stats
        click.echo(f"{corpus}\n{corpus_stats}")

    payload = {name: corpus_stats.to_dictionary() for name, corpus_stats in stats_by_corpus.items()}
    emit_json(payload)
    if json_out:
        utils.write_json(json_out, payload)
        write_manifest(json_out, 'stats', run_config, corpora)
    if latex:
        TableBuilder.print_table_corpus_stats(stats_by_corpus)


@docrel.command()
@click.argument('corpus')
@click.option('--min-count', type=int, default=None, help='Defaults to vocab.min_count.')
@click.option('--out', required=True, type=click.Path(dir_okay=False))
@click.pass_obj
def vocab(run_config, corpus, min_count, out):
    """Build the token vocabulary of a corpus."""
    min_count = run_config.get('vocab.min_count') if min_count is None else min_count
    vocabulary = VocabularyService.build_vocab(CorpusService.load_corpus(corpus), min_count=min_count)
    VocabularyService.write(vocabulary, out)
    write_manifest(out, 'vocab', run_config, [corpus])
    click.echo(f"{len(vocabulary)} ids, hash {vocabulary.content_hash}")


@docrel.command()
@click.option('--task', type=click.Choice(['gate', 'relation', 'joint']), required=True)
@click.option('--train-corpus', required=True)
@click.option('--dev-corpus', default=None)
@click.option('--vocab', 'vocab_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--out', required=True, type=click.Path(dir_okay=False))
@click.pass_obj
def train(run_config, task, train_corpus, dev_corpus, vocab_path, out):
    """Train a gate, relation or joint bundle."""
    vocabulary = VocabularyService.read(vocab_path)
    train_documents = CorpusService.load_corpus(train_corpus)
    dev_documents = CorpusService.load_corpus(dev_corpus) if dev_corpus else None

    bundle = Trainer.train(train_documents, vocabulary, run_config.train_config(task=task),
                           run_config.encoder_config(len(vocabulary)), d_low=run_config.get('head.d_low'),
                           use_bias=run_config.get('head.use_bias'), dev_corpus=dev_documents)

    BundleService.save_bundle(bundle, out)
    utils.write_json_lines(str(out) + '.history.jsonl', Trainer.history_rows(bundle))
    inputs = [train_corpus, vocab_path] + ([dev_corpus] if dev_corpus else [])
    write_manifest(out, f"train --task {task}", run_config, inputs)


@docrel.command()
@click.option('--mode', type=click.Choice(['pipeline', 'joint']), required=True)
@click.option('--corpus', required=True)
@click.option('--vocab', 'vocab_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--bundle', 'bundle_path', default=None, help='Joint bundle (joint mode).')
@click.option('--gate-bundle', default=None, help='Gate bundle (pipeline mode).')
@click.option('--relation-bundle', default=None, help='Relation bundle (pipeline mode).')
@click.option('--gate-threshold', type=float, default=None, help='Defaults to predict.gate_threshold.')
@click.option('--workers', type=int, default=None, help='Defaults to predict.n_workers.')
@click.option('--out', required=True, type=click.Path(dir_okay=False))
@click.pass_obj
def predict(run_config, mode, corpus, vocab_path, bundle_path, gate_bundle, relation_bundle, gate_threshold,
            workers, out):
    """Write a prediction file for a corpus."""
    vocabulary = VocabularyService.read(vocab_path)
    documents = CorpusService.load_corpus(corpus)
    n_workers = run_config.get('predict.n_workers') if workers is None else workers

    if mode == 'joint':
        if bundle_path is None:
            raise click.UsageError('joint mode needs --bundle')
        bundle = BundleService.load_bundle(bundle_path, vocabulary)
        predictions = Predictor.joint_predict(bundle, documents, vocabulary, n_workers=n_workers)
        inputs = [corpus, vocab_path, bundle_path]
    else:
        if gate_bundle is None or relation_bundle is None:
            raise click.UsageError('pipeline mode needs --gate-bundle and --relation-bundle')
        threshold = run_config.get('predict.gate_threshold') if gate_threshold is None else gate_threshold
        predictions = Predictor.pipeline_predict(BundleService.load_bundle(gate_bundle, vocabulary),
                                                 BundleService.load_bundle(relation_bundle, vocabulary),
                                                 documents, vocabulary, gate_threshold=threshold,
                                                 n_workers=n_workers)
        inputs = [corpus, vocab_path, gate_bundle, relation_bundle]

    PredictionFileService.write_predictions(predictions, out)
    write_manifest(out, f"predict --mode {mode}", run_config, inputs)
    click.echo(f"{len(predictions)} predictions written to {out}")


@docrel.command(name='eval')
@click.argument('predictions_path', metavar='PREDS')
@click.argument('gold', metavar='GOLD')
@click.option('--relation-bundle', default=None, help='Also report step-2 accuracy of this relation bundle.')
@click.option('--vocab', 'vocab_path', default=None, type=click.Path(exists=True, dir_okay=False))
@click.option('--json-out', type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def evaluate(run_config, predictions_path, gold, relation_bundle, vocab_path, json_out):
    """Score a prediction file against a gold corpus."""
    predictions = PredictionFileService.read_predictions(predictions_path)
    documents = CorpusService.load_corpus(gold)

    step2_accuracy = None
    if relation_bundle is not None:
        if vocab_path is None:
            raise click.UsageError('--relation-bundle needs --vocab')
        vocabulary = VocabularyService.read(vocab_path)
        step2_accuracy = PerformanceBuilder.step2_accuracy(BundleService.load_bundle(relation_bundle, vocabulary),
                                                           documents, vocabulary)

    report = PerformanceBuilder.micro_f1(predictions, documents, step2_accuracy=step2_accuracy)
    click.echo(str(report))
    emit_json(report.to_dictionary())
    if json_out:
        utils.write_json(json_out, report.to_dictionary())
        inputs = [predictions_path, gold] + ([relation_bundle, vocab_path] if relation_bundle is not None else [])
        write_manifest(json_out, 'eval', run_config, inputs)


@docrel.command()
@click.option('--max-coordinates', type=int, default=None, help='Sample this many coordinates per parameter.')
@click.option('--json-out', type=click.Path(dir_okay=False), default=None)
@click.pass_context
def gradcheck(context, max_coordinates, json_out):
    """Finite-difference gradient checks of every model stage."""
    reports = GradientCheckSuite.run(seed=context.obj.get('train.seed'), max_coordinates=max_coordinates)
    for report in reports:
        click.echo(str(report))
    if json_out:
        utils.write_json(json_out, [report.to_dictionary() for report in reports])
        write_manifest(json_out, 'gradcheck', context.obj, [])
    if not all(report.passed for report in reports):
        context.exit(1)


@docrel.command()
@click.option('--experiment', type=click.Choice(['two-step', 'sentence-scope']), required=True)
@click.option('--train-corpus', required=True)
@click.option('--dev-corpus', required=True)
@click.option('--vocab', 'vocab_path', required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--out', required=True, type=click.Path(dir_okay=False), help='JSON report of every system.')
@click.pass_obj
def compare(run_config, experiment, train_corpus, dev_corpus, vocab_path, out):
    """Run the one-step vs two-step comparison or the sentence-scope ablation."""
    vocabulary = VocabularyService.read(vocab_path)
    train_documents = CorpusService.load_corpus(train_corpus)
    dev_documents = CorpusService.load_corpus(dev_corpus)
    arguments = (train_documents, dev_documents, vocabulary, run_config.train_config(),
                 run_config.encoder_config(len(vocabulary)))
    settings = {'d_low': run_config.get('head.d_low'), 'n_workers': run_config.get('predict.n_workers')}

    if experiment == 'two-step':
        system_results = ExperimentRunner.compare_two_step(*arguments, **settings)
    else:
        system_results = ExperimentRunner.compare_sentence_scope(*arguments, **settings)

    utils.write_json(out, {result.system_type.value: result.report.to_dictionary() for result in system_results})
    write_manifest(out, f"compare --experiment {experiment}", run_config, [train_corpus, dev_corpus, vocab_path])


def main(argv=None):
    try:
        result = docrel.main(args=argv, prog_name='docrel', standalone_mode=False)
    except click.ClickException as error:
        error.show()
        return error.exit_code
    except click.Abort:
        click.echo('Aborted.', err=True)
        return 1
    except (DocRelError, OSError) as error:
        click.echo(json.dumps({'error': type(error).__name__, 'message': str(error)}, sort_keys=True), err=True)
        return 1
    return result if isinstance(result, int) else 0


if __name__ == '__main__':
    sys.exit(main())
