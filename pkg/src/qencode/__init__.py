"""Circuit synthesis for matrix encodings: state preparation, block encodings and conversions."""

__version__ = "0.1.0"
