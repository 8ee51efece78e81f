"""Constants shared across the package."""


class ExitCodes:
    """Process exit codes of the command line."""

    SUCCESS = 0
    USAGE_ERROR = 1
    RUNTIME_ERROR = 2


class ErrorCodes:
    """Stable error codes attached to every raised error."""

    GENERAL_ERROR_CODE = "CN-000"
    CONFIG_ERROR_CODE = "CN-001"
    DATA_FORMAT_ERROR_CODE = "CN-101"
    DATA_INCONSISTENCY_ERROR_CODE = "CN-102"
    DATA_PARSE_ERROR_CODE = "CN-103"
    STRATIFICATION_ERROR_CODE = "CN-104"
    DIMENSION_ERROR_CODE = "CN-201"
    NUMERIC_ERROR_CODE = "CN-202"
    CHECKPOINT_ERROR_CODE = "CN-203"
    CENTER_INIT_ERROR_CODE = "CN-301"
    LABEL_RANGE_ERROR_CODE = "CN-302"
    PAIR_INDEX_ERROR_CODE = "CN-401"


class ErrorMessages:
    """Default messages for every error class."""

    GENERAL_ERROR = "Unexpected error"
    CONFIG_ERROR = "Invalid configuration"
    DATA_FORMAT_ERROR = "Unrecognised data format"
    DATA_INCONSISTENCY_ERROR = "Inconsistent data files"
    DATA_PARSE_ERROR = "Could not parse data file"
    STRATIFICATION_ERROR = "Stratified sampling is not possible"
    DIMENSION_ERROR = "Array shape does not match the network"
    NUMERIC_ERROR = "Non-finite value encountered"
    CHECKPOINT_ERROR = "Invalid checkpoint"
    CENTER_INIT_ERROR = "Cluster centers cannot be initialised"
    LABEL_RANGE_ERROR = "Label outside the cluster range"
    PAIR_INDEX_ERROR = "Pair index outside the batch"


class IdxFormat:
    """IDX (MNIST) binary layout."""

    IMAGES_MAGIC = 0x00000803
    LABELS_MAGIC = 0x00000801
    IMAGES_HEADER = ">IIII"
    LABELS_HEADER = ">II"
    PIXEL_SCALE = 255.0


class Defaults:
    """Numeric defaults of the method and of the desk-scale setup."""

    LATENT_DIM = 32
    HIDDEN_WIDTHS = (500, 128)
    LEAKY_SLOPE = 0.01
    DROPOUT_RATE = 0.10
    CONV_FILTERS = (32, 64, 128)
    CONV_KERNEL = 3
    CONV_STRIDE = 2
    CONV_PADDING = 1

    PRETRAIN_EPOCHS = 100
    FINETUNE_EPOCHS = 60
    LEARNING_RATE = 1e-4
    ADAM_BETAS = (0.9, 0.999)
    ADAM_EPSILON = 1e-8
    T1 = 5
    T2 = 40
    MARGIN = 2.0
    BATCH_SIZE = 256
    LABELED_PER_BATCH = 64
    MAX_SIMILAR_PAIRS = 256
    MAX_DISSIMILAR_PAIRS = 256

    KL_EPSILON = 1e-12
    KMEANS_MAX_ITER = 300
    KMEANS_N_INIT = 10
    EMBED_CHUNK = 1024
    CHECKPOINT_VERSION = 1
