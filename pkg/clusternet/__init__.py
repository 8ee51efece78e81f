"""Semi-supervised clustering with an autoencoder and pairwise KL constraints."""
