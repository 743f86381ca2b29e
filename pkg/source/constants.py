import os

from dotenv import load_dotenv

from source import utils

load_dotenv()


class Constants(object):
    VERBOSE = True

    DATA_DIR = os.getenv('DOCREL_DATA_DIR', str(utils.get_project_root().joinpath('data')))
    FIGURE_FILE_PATH = utils.get_project_root().joinpath('outputs/figures/')
    RUN_FILE_PATH = utils.get_project_root().joinpath('outputs/runs/')

    MAX_LEN = 512
    MIN_COUNT = 1
    NA_RATIO = 3
    LOW_DIMENSION = 128
    GATE_THRESHOLD = 0.5

    LEARNING_RATE = 1e-3
    FINE_TUNING_LEARNING_RATE = 1e-5  # BERT-base fine-tuning value; too small for from-scratch training
    ADAM_BETAS = (0.9, 0.999)
    ADAM_EPSILON = 1e-8

    GRAD_CHECK_THRESHOLD = 1e-3
    GRAD_CHECK_SANITY_THRESHOLD = 1e-1
    FINITE_DIFFERENCE_EPSILON = 1e-4

    BUNDLE_VERSION = 'docrel-bundle-1'
    PACKAGE_VERSION = '0.1.0'

    @classmethod
    def update(cls, key, value):
        if hasattr(cls, key):
            setattr(cls, key, value)
        else:
            raise AttributeError(f"Constants has no attribute {key}")
