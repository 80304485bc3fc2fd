"""quotpairs: stable-pairs invariants in class 2[C] by torus localization."""
