#!/usr/bin/env python3
# Copyright (C) 2026 taylor.fish <contact@taylor.fish>
#
# This file is part of trimap.
#
# trimap is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# trimap is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with trimap.  If not, see <http://www.gnu.org/licenses/>.

import os
import sys

SETUPTOOLS_IMPORT_ERROR_MSG = """\
setuptools must be installed. If pip is installed, run:
    pip3 install --user setuptools
If pip isn't installed, see:
    https://pip.pypa.io/en/stable/installing/
""".rstrip()

try:
    from setuptools import setup
except ModuleNotFoundError:
    sys.exit(SETUPTOOLS_IMPORT_ERROR_MSG)

SCRIPT_DIR = os.path.dirname(os.path.realpath(__file__))
LICENSE_ID = "GNU General Public License v3 or later (GPLv3+)"


def long_description():
    with open(os.path.join(SCRIPT_DIR, "README.rst"), encoding="utf-8") as f:
        return f.read()


setup(
    name="trimap",
    version="0.1.0",
    description="A desk-scale trilinear map built from blinded elliptic "
                "curve arithmetic.",
    long_description=long_description(),
    author="taylor.fish",
    author_email="contact@taylor.fish",
    license=LICENSE_ID,
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Topic :: Security :: Cryptography",
        "License :: OSI Approved :: " + LICENSE_ID,
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    keywords="trilinear map elliptic curve weil pairing blinding",
    packages=["trimap"],
    entry_points={
        "console_scripts": [
            "trimap=trimap:main",
        ],
    },
    install_requires=[
        "sympy>=1.9,<2",
        "setuptools>=39.0.0",
    ],
    extras_require={
        "test": ["pytest>=7.0", "hypothesis>=6.0"],
    },
    python_requires=">=3.8",
)
