from pydantic import BaseModel, ConfigDict, Field


class GridShape(BaseModel):
    """
    Shape of the product ``C_m x C_n`` of two finite chains.

    Shapes with ``m == 1`` or ``n == 1`` describe chains; the grid counting
    formulas and the structure theorem need ``m, n >= 2``.
    """

    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=1, description="Size of the first chain")
    n: int = Field(ge=1, description="Size of the second chain")

    @property
    def is_grid(self) -> bool:
        return self.m >= 2 and self.n >= 2

    @property
    def size(self) -> int:
        return self.m * self.n

    def index(self, i: int, j: int) -> int:
        return i * self.n + j

    def point(self, index: int) -> tuple[int, int]:
        return divmod(index, self.n)
