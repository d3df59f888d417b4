import pytest


def pytest_addoption(parser):
    """Pass optional arguments to run the command line interface (slower) or the slow corpus cases"""
    parser.addoption(
        "--cli",
        action="store_true",
        default=False,
        help="run test cases through the freediv command line interface",
    )
    parser.addoption(
        "--slow",
        action="store_true",
        default=False,
        help="run the slow corpus cases",
    )


def pytest_configure(config):
    pytest.cli = config.option.cli is True
    pytest.slow = config.option.slow is True


def pytest_collection_modifyitems(config, items):
    if config.option.slow:
        return
    skip_slow = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
