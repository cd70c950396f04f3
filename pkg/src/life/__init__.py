"""life: storage, interchange, linked-data export, auto-glossing and dictionary
compilation for linguistic field data (lexicons, interlinear glossed text,
media metadata)."""

__version__ = "0.1.0"
