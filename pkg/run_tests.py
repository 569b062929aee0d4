"""
Script to run the haarboost test suites.

Usage:
    python run_tests.py                  # Run all suites
    python run_tests.py -v               # Verbose
    python run_tests.py -q               # Minimal output
    python run_tests.py genetic stump    # Only tests/test_genetic.py and tests/test_stump.py
    python run_tests.py --slow           # Include the desk-scale accuracy check
"""
import os
import sys
import unittest


def build_suite(modules):
    """
    Collect the requested test modules, or every module when none is named.

    Returns:
        (suite, names of modules that do not exist)
    """
    loader = unittest.defaultTestLoader
    if not modules:
        return loader.discover("tests"), []

    suite = unittest.TestSuite()
    missing = []
    for name in modules:
        if os.path.isfile(f"tests/test_{name}.py"):
            suite.addTests(loader.discover("tests", pattern=f"test_{name}.py"))
        else:
            missing.append(name)
    return suite, missing


def main(argv):
    verbosity = 1
    modules = []
    for arg in argv:
        if arg == "-v":
            verbosity = 2
        elif arg == "-q":
            verbosity = 0
        elif arg == "--slow":
            os.environ["HAARBOOST_SLOW_TESTS"] = "1"
        else:
            modules.append(arg)

    suite, missing = build_suite(modules)
    for name in missing:
        print(f"Test module 'test_{name}.py' not found.")
    if missing:
        return 1
    result = unittest.TextTestRunner(verbosity=verbosity).run(suite)
    return 0 if result.wasSuccessful() else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
