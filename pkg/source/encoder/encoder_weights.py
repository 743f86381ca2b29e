from source.encoder.encoder_config import EncoderConfig, EncoderMode
from source.numerics.initializer import Initializer
from source.numerics.parameter_store import ParameterStore


class EncoderWeights(ParameterStore):

    @staticmethod
    def initialize(config: EncoderConfig, rng):
        d_model, d_ff = config.d_model, config.d_ff
        parameters = [Initializer.scaled_uniform(rng, (config.vocab_size, d_model), 'token_embedding')]

        if config.mode == EncoderMode.transformer:
            parameters.append(Initializer.scaled_uniform(rng, (config.max_len, d_model), 'position_embedding'))
            for layer in range(config.n_layers):
                prefix = f"layer{layer}"
                for projection in ('query', 'key', 'value', 'output'):
                    parameters.append(Initializer.scaled_uniform(rng, (d_model, d_model),
                                                                 f"{prefix}.{projection}.weight"))
                    parameters.append(Initializer.zeros((d_model,), f"{prefix}.{projection}.bias"))
                parameters.append(Initializer.ones((d_model,), f"{prefix}.attention_norm.gain"))
                parameters.append(Initializer.zeros((d_model,), f"{prefix}.attention_norm.shift"))
                parameters.append(Initializer.scaled_uniform(rng, (d_model, d_ff), f"{prefix}.feed_forward_in.weight"))
                parameters.append(Initializer.zeros((d_ff,), f"{prefix}.feed_forward_in.bias"))
                parameters.append(Initializer.scaled_uniform(rng, (d_ff, d_model), f"{prefix}.feed_forward_out.weight"))
                parameters.append(Initializer.zeros((d_model,), f"{prefix}.feed_forward_out.bias"))
                parameters.append(Initializer.ones((d_model,), f"{prefix}.output_norm.gain"))
                parameters.append(Initializer.zeros((d_model,), f"{prefix}.output_norm.shift"))

        return EncoderWeights(parameters)
