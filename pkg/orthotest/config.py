#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 2026

This file holds the run-time configuration of the rectilinear planarity
tester. Every setting can be overridden through the environment (or a local
.env file); the command line overrides the environment by setting attributes
on a Config instance.

Written in Python 3.6
"""
import os
from dotenv import load_dotenv

load_dotenv()


def _flag(value):
    """Interpret an environment string as a boolean switch."""
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in ('1', 'on', 'true', 'yes')


class Config(object):
    # Oracle size bounds are hard limits, not truncation points
    MAX_ORACLE_N = int(os.environ.get('ORTHOTEST_MAX_ORACLE_N') or 10)
    MAX_ORACLE_M = int(os.environ.get('ORTHOTEST_MAX_ORACLE_M') or 14)
    USE_FFT = _flag(os.environ.get('ORTHOTEST_FFT') or 'off')
    FFT_MIN_BITS = int(os.environ.get('ORTHOTEST_FFT_MIN_BITS') or 512)
    FAST_PATH = os.environ.get('ORTHOTEST_FAST_PATH') or 'auto'
    LAZY_LABELS = _flag(os.environ.get('ORTHOTEST_LAZY_LABELS') or 'off')
    LOG_LEVEL = os.environ.get('ORTHOTEST_LOG_LEVEL') or 'WARNING'

    def __init__(self, **overrides):
        for key, value in overrides.items():
            if not hasattr(Config, key):
                raise AttributeError(f"Unknown configuration setting: {key}")
            setattr(self, key, value)


def get_config(config=None):
    """Return the passed configuration or a fresh default one."""
    return config if config is not None else Config()
