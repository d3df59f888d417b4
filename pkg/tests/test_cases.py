import json
import os

import pytest

from .utils import run_with_reference, this_file_dir


@pytest.mark.parametrize("testfile", ['conic_line.json',
                                      'arr1.json',
                                      'normal_crossing.json',
                                      'smooth_conic.json',
                                      'cusp.json',
                                      'node.json',
                                      'line.json',
                                      'quintic_plus.json',
                                      'affine_cn2.json',
                                      'plane_arrangement.json',
                                      ])
def test_analyze(testfile):
    '''
    run all test cases and compare against the stored reference report
    '''

    results_dir = os.path.join(this_file_dir, 'cases', 'results')

    with open(os.path.join(results_dir, f'result_{testfile}')) as ff:
        ref = json.load(ff)

    run_with_reference(ref, os.path.join(this_file_dir, 'cases', testfile))
