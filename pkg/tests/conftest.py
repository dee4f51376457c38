import pytest

from nsrand import games


@pytest.fixture(scope="session")
def chain_game():
    return games.make_chain_game()


@pytest.fixture(scope="session")
def chsh_game():
    return games.make_chsh_game()


@pytest.fixture(scope="session")
def chain_guessing_game(chain_game):
    return games.make_guessing_game(chain_game)


@pytest.fixture(scope="session")
def magic_square_game():
    return games.make_magic_square_game()
