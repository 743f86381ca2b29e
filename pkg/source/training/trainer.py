import time

import numpy as np

from source import utils
from source.constants import Constants
from source.corpus.document_linearizer import DocumentLinearizer
from source.corpus.pair_enumerator import PairEnumerator
from source.encoder.document_encoder import DocumentEncoder
from source.encoder.encoder_config import EncoderConfig
from source.encoder.encoder_weights import EncoderWeights
from source.errors import ConfigurationError, DivergenceError
from source.numerics.adam_optimizer import AdamOptimizer
from source.numerics.compute_tape import ComputeTape
from source.numerics.precision import Precision
from source.numerics.tensor_ops import TensorOps
from source.relhead.head_config import HeadConfig
from source.relhead.head_weights import HeadWeights
from source.relhead.relation_head import RelationHead
from source.training.dev_evaluator import DevEvaluator
from source.training.model_bundle import ModelBundle
from source.training.na_subsampler import NaSubsampler
from source.training.task_labeler import TaskLabeler
from source.training.task_type import TaskType
from source.training.train_config import TrainConfig


class TrainingExample(object):
    def __init__(self, linearized, pairs):
        self.linearized = linearized
        self.pairs = pairs


class Trainer(object):

    @staticmethod
    def train(corpus, vocabulary, train_config: TrainConfig, encoder_config: EncoderConfig = None,
              d_low=Constants.LOW_DIMENSION, use_bias=True, dev_corpus=None, precision=Precision.STANDARD):
        """Trains one bundle for ``train_config.task``.

        All randomness (initialization, document order, N/A sampling, dropout) draws from one
        generator seeded with ``train_config.seed``. With a dev corpus the returned weights are
        those of the best dev metric; otherwise the final weights.
        """
        if not corpus:
            raise ConfigurationError("training corpus is empty")
        if encoder_config is None:
            encoder_config = EncoderConfig(vocab_size=len(vocabulary))
        if encoder_config.vocab_size != len(vocabulary):
            raise ConfigurationError(f"encoder vocab_size {encoder_config.vocab_size} does not match "
                                     f"vocabulary of {len(vocabulary)} ids")

        task = train_config.task
        head_config = HeadConfig(d_model=encoder_config.d_model, n_classes=task.n_classes, d_low=d_low,
                                 use_bias=use_bias)
        rng = utils.make_rng(train_config.seed)

        with Precision.use(precision):
            encoder_weights = EncoderWeights.initialize(encoder_config, rng)
            head_weights = HeadWeights.initialize(head_config, rng)

        examples = Trainer.prepare(corpus, vocabulary, encoder_config.max_len)
        Trainer.check_trainable(examples, task)

        bundle = ModelBundle(task, encoder_config, encoder_weights, head_config, head_weights,
                             vocabulary.content_hash)
        optimizer = AdamOptimizer(bundle.parameters(), learning_rate=train_config.learning_rate)

        loss_history = []
        dev_metric_history = []
        best = None
        stale_evaluations = 0
        steps = 0

        if Constants.VERBOSE:
            print(f"Training {task.value} model on {len(examples)} documents "
                  f"({encoder_config.mode.value} encoder, {train_config.epochs} epochs)")

        with Precision.use(precision):
            for epoch in range(1, train_config.epochs + 1):
                start_time = time.time()
                order = rng.permutation(len(examples))

                batch_losses = []
                for batch_index, start in enumerate(range(0, len(order), train_config.batch_docs)):
                    batch = [examples[int(index)] for index in order[start:start + train_config.batch_docs]]
                    loss = Trainer.train_batch(batch, bundle, optimizer, train_config, rng, epoch, batch_index)
                    if loss is not None:
                        batch_losses.append(loss)
                        steps += 1
                loss_history.append(float(np.mean(batch_losses)) if batch_losses else None)

                dev_metric = None
                if dev_corpus and epoch % train_config.eval_every == 0:
                    dev_metric = DevEvaluator.evaluate(bundle, dev_corpus, vocabulary)
                    if dev_metric is not None and (best is None or dev_metric > best[0]):
                        best = (dev_metric, epoch, encoder_weights.to_arrays(), head_weights.to_arrays())
                        stale_evaluations = 0
                    else:
                        stale_evaluations += 1
                dev_metric_history.append(dev_metric)

                if Constants.VERBOSE:
                    Trainer.print_epoch(epoch, train_config.epochs, loss_history[-1], dev_metric,
                                        time.time() - start_time)

                if train_config.patience and stale_evaluations >= train_config.patience:
                    if Constants.VERBOSE:
                        print(f"Stopping early after epoch {epoch}: no dev improvement in "
                              f"{train_config.patience} evaluations")
                    break

        best_epoch = None
        if best is not None:
            best_epoch = best[1]
            encoder_weights = EncoderWeights.from_arrays(best[2])
            head_weights = HeadWeights.from_arrays(best[3])

        metadata = {'seed': train_config.seed,
                    'train_config': train_config.to_dictionary(),
                    'epochs_run': len(loss_history),
                    'steps': steps,
                    'best_epoch': best_epoch,
                    'loss_history': loss_history,
                    'dev_metric_history': dev_metric_history,
                    'relation_classes': bundle.relation_classes()}
        return ModelBundle(task, encoder_config, encoder_weights, head_config, head_weights,
                           vocabulary.content_hash, metadata)

    @staticmethod
    def prepare(corpus, vocabulary, max_len):
        examples = []
        for document in corpus:
            linearized = DocumentLinearizer.linearize(document, vocabulary, max_len)
            surviving = set(linearized.surviving_entities())
            pairs = [pair for pair in PairEnumerator.enumerate_pairs(document)
                     if pair.head_idx in surviving and pair.tail_idx in surviving]
            examples.append(TrainingExample(linearized, pairs))
        return examples

    @staticmethod
    def check_trainable(examples, task: TaskType):
        labeled = sum(len(TaskLabeler.relabel_for_task(example.pairs, task)) for example in examples)
        if labeled == 0:
            raise ConfigurationError(f"no {task.value} training instances in the corpus")

    @staticmethod
    def batch_pairs(batch, train_config: TrainConfig, rng):
        """Task-labeled pairs per document of a batch.

        N/A subsampling runs once over the pairs of the whole batch, so the kept N/A count
        follows the batch's positives rather than each document's.
        """
        pools = [example.pairs for example in batch]
        if train_config.subsample_enabled and train_config.task != TaskType.relation:
            pooled = [pair for pairs in pools for pair in pairs]
            kept = set(NaSubsampler.kept_indices(pooled, train_config.na_ratio, rng))
            offsets = np.cumsum([0] + [len(pairs) for pairs in pools])
            pools = [[pair for position, pair in enumerate(pairs, start=int(offset)) if position in kept]
                     for pairs, offset in zip(pools, offsets)]

        labeled = []
        for pairs in pools:
            if train_config.task != TaskType.gate:
                pairs = PairEnumerator.expand_training_views(pairs)
            labeled.append(TaskLabeler.relabel_for_task(pairs, train_config.task))
        return labeled

    @staticmethod
    def train_batch(batch, bundle: ModelBundle, optimizer: AdamOptimizer, train_config: TrainConfig, rng, epoch,
                    batch_index):
        optimizer.zero_grad()

        batch_logits = []
        targets = []
        for example, labeled in zip(batch, Trainer.batch_pairs(batch, train_config, rng)):
            if not labeled:
                continue
            output = DocumentEncoder.encode_document(bundle.encoder_config, bundle.encoder_weights,
                                                     example.linearized, train_flag=True, rng=rng)
            pairs = [(item.pair.head_idx, item.pair.tail_idx) for item in labeled]
            batch_logits.append(RelationHead.score_pairs(output, example.linearized.entity_positions, pairs,
                                                         bundle.head_weights))
            targets.extend(item.target for item in labeled)

        if not batch_logits:
            return None

        logits = batch_logits[0] if len(batch_logits) == 1 else TensorOps.concat_rows(batch_logits)
        loss = TensorOps.cross_entropy_loss(logits, targets)
        value = loss.item()
        if not np.isfinite(value):
            ComputeTape.current().clear()
            raise DivergenceError(f"epoch {epoch}, batch {batch_index}: loss is {value} "
                                  f"over {len(targets)} pairs")

        ComputeTape.backward(loss)
        optimizer.step()
        return value

    @staticmethod
    def history_rows(bundle: ModelBundle):
        return [{'epoch': epoch, 'loss': loss, 'dev_metric': dev_metric}
                for epoch, (loss, dev_metric) in enumerate(zip(bundle.metadata.get('loss_history', []),
                                                               bundle.metadata.get('dev_metric_history', [])),
                                                           start=1)]

    @staticmethod
    def print_epoch(epoch, epochs, loss, dev_metric, elapsed):
        loss_text = 'n/a' if loss is None else f"{loss:.4f}"
        dev_text = '' if dev_metric is None else f"  dev {dev_metric:.4f}"
        print(f"Epoch {epoch}/{epochs}  loss {loss_text}{dev_text}  ({elapsed:.1f}s)")
