import math

from source.errors import ConfigurationError


class NaSubsampler(object):

    @staticmethod
    def number_to_keep(positives, available, na_ratio):
        if positives == 0:
            return min(int(math.floor(na_ratio)), available)
        return min(int(math.floor(na_ratio * positives)), available)

    @staticmethod
    def kept_indices(pairs, na_ratio, rng):
        """Sorted indices of the pairs that survive subsampling."""
        if na_ratio < 0:
            raise ConfigurationError(f"na_ratio must be non-negative, got {na_ratio}")

        negative_indices = [index for index, pair in enumerate(pairs) if not pair.is_positive]
        positives = len(pairs) - len(negative_indices)
        keep = NaSubsampler.number_to_keep(positives, len(negative_indices), na_ratio)

        if keep == len(negative_indices):
            return list(range(len(pairs)))

        chosen = rng.choice(len(negative_indices), size=keep, replace=False) if keep else []
        kept_negatives = {negative_indices[int(index)] for index in chosen}
        return [index for index, pair in enumerate(pairs) if pair.is_positive or index in kept_negatives]

    @staticmethod
    def subsample_na(pairs, na_ratio, rng):
        """Keeps every positive pair and a without-replacement sample of N/A pairs.

        At most ``na_ratio`` N/A pairs are kept per positive; a batch with no positives
        keeps ``na_ratio`` N/A pairs. Surviving pairs stay in their input order.
        """
        return [pairs[index] for index in NaSubsampler.kept_indices(pairs, na_ratio, rng)]
