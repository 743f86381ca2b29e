import pytest

from source.training.gradient_check_suite import GradientCheckSuite
from source.utils import make_rng


class TestGradientCheckSuite:

    def test_every_stage_passes(self):
        reports = GradientCheckSuite.run(seed=0, max_coordinates=12)

        assert [report.label for report in reports] == ['affine', 'layer_norm', 'attention_block', 'projection',
                                                        'bilinear_head', 'end_to_end']
        for report in reports:
            assert report.passed, str(report)

    @pytest.mark.slow
    def test_every_coordinate_of_the_small_stages(self):
        for check in (GradientCheckSuite.check_affine, GradientCheckSuite.check_layer_norm,
                      GradientCheckSuite.check_projection):
            report = check(make_rng(5))
            assert report.passed, str(report)
