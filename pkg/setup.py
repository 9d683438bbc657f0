from setuptools import setup


def load_requirements(use_case):
    """
    Loading range requirements from requirements/<use_case>.in.
    Packaging should be used for installing the package into existing stacks,
    so only the ranges are read here; the .txt files hold exact pins for
    reproducible numerical runs.
    """
    with open("requirements/%s.in" % use_case, "r") as f:
        return [
            req
            for req in f.read().splitlines()
            if not req.strip() == ""
            and not req.strip().startswith("#")
            and not req.strip().startswith("-c")
            and not req.strip().startswith("--find-links")
        ]


setup(
    install_requires=load_requirements("app"),
    extras_require={"test": load_requirements("test")},
)
