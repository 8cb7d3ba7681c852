# Reconstruction core package
