from .augment import augment
from .features import FeatureMatrix, LocalProblem, NeighborIndex, knn_per_class, nn_baseline, normalize
from .fetch import fetch_mnist
from .idx import MnistSet, load_idx_images, load_idx_labels, load_mnist
from .pipeline import MNIST_CONFIG, classify_digit, evaluate_run, run_mnist

__all__ = [
    "FeatureMatrix", "LocalProblem", "MNIST_CONFIG", "MnistSet", "NeighborIndex", "augment",
    "classify_digit", "evaluate_run", "fetch_mnist", "knn_per_class", "load_idx_images",
    "load_idx_labels", "load_mnist", "nn_baseline", "normalize", "run_mnist",
]
