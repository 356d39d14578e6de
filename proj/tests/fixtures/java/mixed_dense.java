package p; // header
/* block */ import java.util.List; // trailing
public class M { /*
 doc */ int f; // field
  /* a */ /* b */
}
