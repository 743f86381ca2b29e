from source.numerics.tensor import Tensor


class EncoderOutput(object):
    def __init__(self, contextual: Tensor, sentence_ids, attention_maps=None):
        self.contextual = contextual
        self.sentence_ids = sentence_ids
        self.attention_maps = attention_maps if attention_maps is not None else []

    @property
    def length(self):
        return self.contextual.shape[0]
