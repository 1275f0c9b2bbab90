#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Created on Sun Oct 18 2026

This file defines common utilities for file I/O. Helpers return an error
object instead of raising, so the command line can report every failure the
same way.

Written in Python 3.6
"""
import os

import pandas as pd

from orthotest.errors import OrthoTestError
from orthotest.graph_model import parse_graph


def read_graph_file(fp, encoding='detect'):
    """Read and parse a graph document, testing a few encodings when none is
    given. Returns (graph, encoding, error)."""
    try:
        with open(fp, 'rb') as f:
            raw = f.read()
    except OSError as e:
        return None, None, e
    encodings = [encoding] if encoding != 'detect' else ['utf-8', 'utf-8-sig', 'latin-1']
    text, valid_encoding = None, None
    for test_encoding in encodings:
        try:
            text = raw.decode(test_encoding)
            valid_encoding = test_encoding
            break
        except (UnicodeDecodeError, LookupError):
            pass
    if valid_encoding is None:
        return None, None, UnicodeDecodeError(
            ' '.join(encodings), raw[:1], 0, 1, f"file {fp} could not be decoded")
    try:
        return parse_graph(text), valid_encoding, None
    except OrthoTestError as e:
        return None, valid_encoding, e


def write_text(fp, text):
    """Write a text artifact, checking that the target directory exists."""
    directory = os.path.dirname(fp)
    if directory and not os.path.exists(directory):
        return OSError(f"specified directory {directory} does not exist")
    try:
        with open(fp, 'w', encoding='utf-8') as f:
            f.write(text)
        return None
    except Exception as e:
        return e


def write_pandas(df, fp):
    """Write a pandas DataFrame to a CSV file."""
    directory = os.path.dirname(fp)
    if directory and not os.path.exists(directory):
        return OSError(f"specified directory {directory} does not exist")
    try:
        df.to_csv(fp, index=False)
        return None
    except Exception as e:
        return e


def read_bench_table(fp):
    """Read a bench CSV written by write_pandas. Returns (df, error)."""
    try:
        return pd.read_csv(fp), None
    except Exception as e:
        return None, e
