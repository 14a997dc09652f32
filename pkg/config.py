"""
Configuration settings for svcrypt
"""

import os
from dotenv import load_dotenv

load_dotenv()

class Config:
    """Base configuration"""
    # Master key as 32/48/64 hex chars; the --key flag wins over it
    MASTER_KEY_HEX = os.getenv('SVCRYPT_KEY')

    # Codec defaults
    DEFAULT_QP = int(os.getenv('SVCRYPT_QP', '4'))
    DEFAULT_GOP = int(os.getenv('SVCRYPT_GOP', '8'))
    MOTION_SEARCH_RADIUS = 7

    # Scheme defaults
    CHOOSE_FRACTION = 0.5
    PERCEPTUAL_FRACTION = 1.0
    SUPPORTED_KEY_LENGTHS = (16, 24, 32)

    # Per-frame worker threads (1 = sequential)
    WORKERS = int(os.getenv('SVCRYPT_WORKERS', '1'))

    # Bench settings
    BENCH_RUNS = int(os.getenv('SVCRYPT_BENCH_RUNS', '5'))

    # Attack settings
    KPA_KNOWN_FRAMES = 5
    KPA_COEFFICIENT_KNOWN_FRAMES = 4

    LOG_LEVEL = os.getenv('SVCRYPT_LOG_LEVEL', 'WARNING')

class DevelopmentConfig(Config):
    """Development configuration"""
    LOG_LEVEL = os.getenv('SVCRYPT_LOG_LEVEL', 'INFO')

class TestingConfig(Config):
    """Testing configuration"""
    LOG_LEVEL = 'DEBUG'
    BENCH_RUNS = 3
    WORKERS = 1

# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'default': Config
}

def get_config():
    """Return the configuration class selected by SVCRYPT_ENV"""
    return config.get(os.getenv('SVCRYPT_ENV', 'default'), Config)
