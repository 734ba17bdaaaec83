import sys

from christoffel_flip.app import ChristoffelFlipApp


def main() -> int:
    return ChristoffelFlipApp().run() or 0


if __name__ == "__main__":
    sys.exit(main())
